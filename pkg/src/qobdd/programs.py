"""Quantum branching programs and their exact state-vector simulation.

A program is a sequence of instructions (variable index, U(0), U(1)) acting on
a d-dimensional state, with an optional input-independent transform before and
after the variable reads, an initial state, and a set of accepting basis
indices.  Running a program on a bit string applies the matrix selected by
each read bit in sequence order; the acceptance probability is the squared
norm of the projection onto the accepting indices.

States and matrices are dense complex128 numpy arrays.  The input-independent
pre/post transforms exist so Hadamard layers and constant-coefficient
rotations do not consume a variable read, keeping compiled programs read-once.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import LengthMismatchError

UNITARY_TOL = 1e-9
NORM_TOL = 1e-9


def ry(theta: float) -> np.ndarray:
    """Rotation by theta about the Bloch-sphere y axis."""
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def hadamard_layer(num_qubits: int) -> np.ndarray:
    """H tensored num_qubits times (the 1x1 identity for zero qubits)."""
    h1 = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0)
    layer = np.array([[1.0]], dtype=np.complex128)
    for _ in range(num_qubits):
        layer = np.kron(layer, h1)
    return layer


def _frozen(matrix: np.ndarray) -> np.ndarray:
    out = np.array(matrix, dtype=np.complex128)
    out.setflags(write=False)
    return out


def is_unitary(matrix: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    d = matrix.shape[0]
    if matrix.shape != (d, d):
        return False
    return bool(np.max(np.abs(matrix.conj().T @ matrix - np.eye(d))) <= tol)


@dataclass(frozen=True)
class Instruction:
    """One variable read: apply on_zero or on_one depending on the bit."""

    variable_index: int
    on_zero: np.ndarray
    on_one: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "on_zero", _frozen(self.on_zero))
        object.__setattr__(self, "on_one", _frozen(self.on_one))


@dataclass(frozen=True)
class ProgramMetrics:
    width: int
    length: int
    qubits: int


@dataclass(frozen=True)
class QuantumBranchingProgram:
    dimension: int
    arity: int
    instructions: tuple[Instruction, ...]
    initial_state: np.ndarray
    accepting: tuple[int, ...]
    pre_transform: np.ndarray | None = None
    post_transform: np.ndarray | None = None

    def __post_init__(self) -> None:
        state = np.array(self.initial_state, dtype=np.complex128)
        state.setflags(write=False)
        object.__setattr__(self, "initial_state", state)
        object.__setattr__(self, "instructions", tuple(self.instructions))
        object.__setattr__(self, "accepting", tuple(sorted(self.accepting)))
        for name in ("pre_transform", "post_transform"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, _frozen(value))


def basis_state(dimension: int, index: int) -> np.ndarray:
    state = np.zeros(dimension, dtype=np.complex128)
    state[index] = 1.0
    return state


def validate(program: QuantumBranchingProgram) -> list[str]:
    """Collect invariant violations; an empty list means the program is valid."""
    violations: list[str] = []
    d = program.dimension
    if program.initial_state.shape != (d,):
        violations.append(
            f"initial state has shape {program.initial_state.shape}, expected ({d},)"
        )
    elif abs(np.linalg.norm(program.initial_state) - 1.0) > NORM_TOL:
        violations.append("initial state is not normalized")
    if not program.accepting:
        violations.append("accepting set is empty")
    if any(not (0 <= idx < d) for idx in program.accepting):
        violations.append("accepting index out of range")
    for label, matrix in (
        ("pre-transform", program.pre_transform),
        ("post-transform", program.post_transform),
    ):
        if matrix is not None:
            if matrix.shape != (d, d):
                violations.append(f"{label} has shape {matrix.shape}, expected ({d}, {d})")
            elif not is_unitary(matrix):
                violations.append(f"{label} is non-unitary")
    for step, instruction in enumerate(program.instructions, start=1):
        if not (1 <= instruction.variable_index <= program.arity):
            violations.append(
                f"instruction {step}: variable index {instruction.variable_index} "
                f"out of range [1, {program.arity}]"
            )
        for label, matrix in (("U(0)", instruction.on_zero), ("U(1)", instruction.on_one)):
            if matrix.shape != (d, d):
                violations.append(
                    f"instruction {step}: {label} has shape {matrix.shape}, "
                    f"expected ({d}, {d})"
                )
            elif not is_unitary(matrix):
                violations.append(f"instruction {step}: {label} is non-unitary")
    return violations


def is_read_once(program: QuantumBranchingProgram) -> bool:
    indices = [instruction.variable_index for instruction in program.instructions]
    return len(indices) == len(set(indices))


def run(
    program: QuantumBranchingProgram,
    bits: Sequence[int],
    check_norm: bool = True,
) -> np.ndarray:
    """Final state after reading the input bits in instruction order."""
    if len(bits) != program.arity:
        raise LengthMismatchError(
            f"expected {program.arity} bits, got {len(bits)}"
        )
    state = program.initial_state.copy()
    if program.pre_transform is not None:
        state = program.pre_transform @ state
    for instruction in program.instructions:
        bit = bits[instruction.variable_index - 1]
        state = (instruction.on_one if bit else instruction.on_zero) @ state
        if check_norm:
            drift = abs(np.linalg.norm(state) - 1.0)
            if drift > NORM_TOL:
                raise ArithmeticError(f"state norm drifted by {drift:.3e}")
    if program.post_transform is not None:
        state = program.post_transform @ state
    return state


def accept_probability(program: QuantumBranchingProgram, bits: Sequence[int]) -> float:
    state = run(program, bits)
    amplitudes = state[list(program.accepting)]
    return float(np.sum(np.abs(amplitudes) ** 2))


def sweep_accept_probabilities(
    program: QuantumBranchingProgram,
    bit_matrix: np.ndarray,
    track_norms: bool = True,
) -> tuple[np.ndarray, float]:
    """Acceptance probabilities for a whole batch of inputs at once.

    bit_matrix has one input per row.  Column v of the internal state matrix
    follows exactly the matrix products run() would apply to input v, so the
    results match accept_probability up to matmul rounding.  Returns the
    probabilities and the largest norm drift observed along any run.
    """
    count, width = bit_matrix.shape
    if width != program.arity:
        raise LengthMismatchError(f"expected arity {program.arity}, got {width}")
    states = np.repeat(program.initial_state[:, None], count, axis=1)
    if program.pre_transform is not None:
        states = program.pre_transform @ states
    max_drift = 0.0
    identity = np.eye(program.dimension, dtype=np.complex128)
    for instruction in program.instructions:
        ones = bit_matrix[:, instruction.variable_index - 1].astype(bool)
        if ones.any():
            states[:, ones] = instruction.on_one @ states[:, ones]
        if not np.array_equal(instruction.on_zero, identity) and (~ones).any():
            states[:, ~ones] = instruction.on_zero @ states[:, ~ones]
        if track_norms:
            norms = np.sqrt(np.sum(np.abs(states) ** 2, axis=0))
            max_drift = max(max_drift, float(np.max(np.abs(norms - 1.0))))
    if program.post_transform is not None:
        states = program.post_transform @ states
    if track_norms:
        norms = np.sqrt(np.sum(np.abs(states) ** 2, axis=0))
        max_drift = max(max_drift, float(np.max(np.abs(norms - 1.0))))
    probabilities = np.sum(np.abs(states[list(program.accepting), :]) ** 2, axis=0)
    return probabilities, max_drift


def metrics(program: QuantumBranchingProgram) -> ProgramMetrics:
    return ProgramMetrics(
        width=program.dimension,
        length=len(program.instructions),
        qubits=math.ceil(math.log2(program.dimension)),
    )


def _matrix_to_json(matrix: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in matrix]


def _matrix_from_json(data: list) -> np.ndarray:
    return np.array(
        [[complex(re, im) for re, im in row] for row in data], dtype=np.complex128
    )


def program_to_json_dict(program: QuantumBranchingProgram) -> dict:
    return {
        "dimension": program.dimension,
        "arity": program.arity,
        "pre_transform": (
            None if program.pre_transform is None else _matrix_to_json(program.pre_transform)
        ),
        "instructions": [
            {
                "variable": instruction.variable_index,
                "on_zero": _matrix_to_json(instruction.on_zero),
                "on_one": _matrix_to_json(instruction.on_one),
            }
            for instruction in program.instructions
        ],
        "post_transform": (
            None
            if program.post_transform is None
            else _matrix_to_json(program.post_transform)
        ),
        "initial_state": [
            [float(z.real), float(z.imag)] for z in program.initial_state
        ],
        "accepting": list(program.accepting),
    }


def program_from_json_dict(data: dict) -> QuantumBranchingProgram:
    return QuantumBranchingProgram(
        dimension=int(data["dimension"]),
        arity=int(data["arity"]),
        instructions=tuple(
            Instruction(
                variable_index=int(entry["variable"]),
                on_zero=_matrix_from_json(entry["on_zero"]),
                on_one=_matrix_from_json(entry["on_one"]),
            )
            for entry in data["instructions"]
        ),
        initial_state=np.array(
            [complex(re, im) for re, im in data["initial_state"]], dtype=np.complex128
        ),
        accepting=tuple(int(i) for i in data["accepting"]),
        pre_transform=(
            None if data.get("pre_transform") is None else _matrix_from_json(data["pre_transform"])
        ),
        post_transform=(
            None
            if data.get("post_transform") is None
            else _matrix_from_json(data["post_transform"])
        ),
    )


def save_program(program: QuantumBranchingProgram, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(program_to_json_dict(program), handle)


def load_program(path: str) -> QuantumBranchingProgram:
    with open(path, "r", encoding="utf-8") as handle:
        return program_from_json_dict(json.load(handle))

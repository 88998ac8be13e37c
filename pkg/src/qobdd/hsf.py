"""Hidden Subgroup Function instances and their linear characteristics.

An instance is a finite group G (Cayley table over element indices 0..N-1), a
normal subgroup K, and the derived coset decomposition.  The input string
encodes a map G -> values: one block of w = ceil(log2 (G:K)) bits per group
element, most significant bit first, block value v encoding the value v + 1.
The predicate is 1 when the map is constant on every coset of K and takes
distinct values on distinct cosets.

Two linear polynomials over Z_(2^n) capture the predicate: one telescopes
weighted within-coset differences (zero exactly when every coset is constant,
by a signed-digit argument in base 2^w), the other compares the sum of coset
representatives against 1 + 2 + ... + (G:K).  Their simultaneous zero set
matches the predicate on inputs satisfying the promise that exactly (G:K)
distinct values occur.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .compiler import GeneralCompilation, compile_general
from .errors import LengthMismatchError, NotNormalError, PromiseViolation
from .goodsets import sample
from .polynomials import Characteristic, LinearPolynomial

ASSOCIATIVITY_CHECK_LIMIT = 64


@dataclass(frozen=True)
class FiniteGroup:
    """Group on element indices 0..order-1 via an explicit Cayley table."""

    order: int
    cayley: tuple[tuple[int, ...], ...]
    identity: int

    def multiply(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inverse(self, a: int) -> int:
        for b in range(self.order):
            if self.cayley[a][b] == self.identity:
                return b
        raise ValueError(f"element {a} has no inverse")

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]]) -> "FiniteGroup":
        order = len(table)
        if order < 1:
            raise ValueError("empty Cayley table")
        rows = tuple(tuple(row) for row in table)
        full = set(range(order))
        for row in rows:
            if len(row) != order or set(row) != full:
                raise ValueError("each Cayley row must be a permutation of 0..N-1")
        for j in range(order):
            if {rows[i][j] for i in range(order)} != full:
                raise ValueError("each Cayley column must be a permutation of 0..N-1")
        identity = None
        for e in range(order):
            if all(rows[e][b] == b for b in range(order)) and all(
                rows[a][e] == a for a in range(order)
            ):
                identity = e
                break
        if identity is None:
            raise ValueError("Cayley table has no two-sided identity")
        if order <= ASSOCIATIVITY_CHECK_LIMIT:
            for a in range(order):
                for b in range(order):
                    ab = rows[a][b]
                    for c in range(order):
                        if rows[ab][c] != rows[a][rows[b][c]]:
                            raise ValueError(
                                f"associativity fails at ({a}, {b}, {c})"
                            )
        return cls(order=order, cayley=rows, identity=identity)

    @classmethod
    def cyclic(cls, order: int) -> "FiniteGroup":
        if order < 1:
            raise ValueError(f"order must be >= 1, got {order}")
        table = tuple(
            tuple((a + b) % order for b in range(order)) for a in range(order)
        )
        return cls(order=order, cayley=table, identity=0)


def cyclic_subgroup(order: int, generator: int) -> tuple[int, ...]:
    """Elements {0, d, 2d, ...} mod order generated by d in the cyclic group."""
    elements = {0}
    current = generator % order
    while current not in elements:
        elements.add(current)
        current = (current + generator) % order
    return tuple(sorted(elements))


def check_normal_subgroup(group: FiniteGroup, elements: Sequence[int]) -> tuple[int, ...]:
    """Validate identity, closure, inverses, and normality; return sorted elements."""
    subgroup = tuple(sorted(set(elements)))
    if any(not (0 <= s < group.order) for s in subgroup):
        raise NotNormalError("subgroup element out of range")
    if group.identity not in subgroup:
        raise NotNormalError("subgroup does not contain the identity")
    member = set(subgroup)
    for a in subgroup:
        if group.inverse(a) not in member:
            raise NotNormalError(f"subgroup is not closed under inverse at {a}")
        for b in subgroup:
            if group.multiply(a, b) not in member:
                raise NotNormalError(f"subgroup is not closed under product at ({a}, {b})")
    for a in range(group.order):
        left = {group.multiply(a, s) for s in subgroup}
        right = {group.multiply(s, a) for s in subgroup}
        if left != right:
            raise NotNormalError(f"aK != Ka at a = {a}")
    return subgroup


def coset_decomposition(
    group: FiniteGroup, subgroup: Sequence[int]
) -> tuple[tuple[int, ...], ...]:
    """Cosets of a normal subgroup, ordered by minimal element, ascending within.

    The representative of each coset is its first (minimal) element.
    """
    validated = check_normal_subgroup(group, subgroup)
    seen: set[int] = set()
    cosets = []
    for a in range(group.order):
        if a in seen:
            continue
        coset = tuple(sorted(group.multiply(a, s) for s in validated))
        cosets.append(coset)
        seen.update(coset)
    return tuple(sorted(cosets, key=lambda c: c[0]))


@dataclass(frozen=True)
class HSFInstance:
    """A group, a normal subgroup, and the bit encoding of value maps G -> X."""

    group: FiniteGroup
    subgroup: tuple[int, ...]
    cosets: tuple[tuple[int, ...], ...]

    @classmethod
    def create(cls, group: FiniteGroup, subgroup: Sequence[int]) -> "HSFInstance":
        cosets = coset_decomposition(group, subgroup)
        if len(cosets) < 2:
            raise ValueError("subgroup index must be >= 2 for a nontrivial instance")
        return cls(
            group=group,
            subgroup=tuple(sorted(set(subgroup))),
            cosets=cosets,
        )

    @property
    def index(self) -> int:
        """(G:K), the number of cosets."""
        return len(self.cosets)

    @property
    def bits_per_value(self) -> int:
        return (self.index - 1).bit_length()

    @property
    def arity(self) -> int:
        return self.group.order * self.bits_per_value

    @property
    def modulus(self) -> int:
        return 2**self.arity


def decode_input(instance: HSFInstance, bits: Sequence[int]) -> tuple[int, ...]:
    """Per-element values in [1, (G:K)]; PromiseViolation if a block is too large."""
    if len(bits) != instance.arity:
        raise LengthMismatchError(f"expected {instance.arity} bits, got {len(bits)}")
    w = instance.bits_per_value
    values = []
    for element in range(instance.group.order):
        block = 0
        for u in range(w):
            block = (block << 1) | bits[element * w + u]
        value = block + 1
        if value > instance.index:
            raise PromiseViolation(
                f"block for element {element} encodes {value} > {instance.index}"
            )
        values.append(value)
    return tuple(values)


def encode_values(instance: HSFInstance, values: Sequence[int]) -> tuple[int, ...]:
    """Inverse of decode_input for valid value sequences."""
    if len(values) != instance.group.order:
        raise LengthMismatchError(
            f"expected {instance.group.order} values, got {len(values)}"
        )
    w = instance.bits_per_value
    bits = []
    for value in values:
        if not (1 <= value <= instance.index):
            raise PromiseViolation(f"value {value} outside [1, {instance.index}]")
        block = value - 1
        bits.extend((block >> (w - 1 - u)) & 1 for u in range(w))
    return tuple(bits)


def hsf_eval(instance: HSFInstance, bits: Sequence[int]) -> int:
    """1 iff the encoded map is constant on cosets and injective across them."""
    try:
        values = decode_input(instance, bits)
    except PromiseViolation:
        return 0
    coset_values = []
    for coset in instance.cosets:
        first = values[coset[0]]
        if any(values[e] != first for e in coset[1:]):
            return 0
        coset_values.append(first)
    if len(set(coset_values)) != instance.index:
        return 0
    return 1


def hsf_characteristic(instance: HSFInstance) -> Characteristic:
    """The two linear polynomials over Z_(2^n) whose joint zero set is the predicate.

    The first accumulates 2^((|K| a + q) w) * (chi_(a,q) - chi_(a,q-1 mod |K|))
    over cosets a and positions q; the encoding offsets cancel in the
    differences.  The second sums the coset representatives' values minus
    (G:K)((G:K)+1)/2, folding the +1 encoding offsets into the constant term.
    """
    n = instance.arity
    modulus = instance.modulus
    w = instance.bits_per_value
    ksize = len(instance.subgroup)
    r = instance.index

    def add_value_bits(coeffs: list[int], element: int, weight: int) -> None:
        for u in range(w):
            coeffs[element * w + u + 1] += weight * (1 << (w - 1 - u))

    g1_coeffs = [0] * (n + 1)
    for a, coset in enumerate(instance.cosets):
        for q, element in enumerate(coset):
            weight = 1 << ((ksize * a + q) * w)
            previous = coset[(q - 1) % ksize]
            add_value_bits(g1_coeffs, element, weight)
            add_value_bits(g1_coeffs, previous, -weight)
    g1 = LinearPolynomial(
        modulus=modulus, arity=n, coefficients=tuple(c % modulus for c in g1_coeffs)
    )

    g2_coeffs = [0] * (n + 1)
    g2_coeffs[0] = (r - r * (r + 1) // 2) % modulus
    for coset in instance.cosets:
        add_value_bits(g2_coeffs, coset[0], 1)
    g2 = LinearPolynomial(
        modulus=modulus, arity=n, coefficients=tuple(c % modulus for c in g2_coeffs)
    )
    return Characteristic(modulus=modulus, arity=n, polynomials=(g1, g2))


def compile_hsf(instance: HSFInstance, epsilon: float, seed: int) -> GeneralCompilation:
    """Sample a parameter set over Z_(2^n) and compile the two-polynomial circuit."""
    characteristic = hsf_characteristic(instance)
    good_set = sample(epsilon, instance.modulus, seed)
    return compile_general(characteristic, good_set)


def satisfies_promise(instance: HSFInstance, bits: Sequence[int]) -> bool:
    """Valid decode with exactly (G:K) distinct values (the standing assumptions)."""
    try:
        values = decode_input(instance, bits)
    except PromiseViolation:
        return False
    return len(set(values)) == instance.index

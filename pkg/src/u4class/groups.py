"""Finite groups as multiplication tables, with the decomposition machinery
for an odd-order normal subgroup with 2-group quotient.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FiniteGroup",
    "GroupHom",
    "Character2",
    "OddDecomposition",
    "ParseError",
    "parse_group",
    "orientation_characters",
    "odd_normal_complement",
    "conjugation_action",
    "abelian_cyclic_decomposition",
]


class ParseError(ValueError):
    """Malformed group specification."""


class FiniteGroup:
    """Finite group on indices 0..order-1 with 0 the identity.

    The multiplication table is stored whole (target scale is order <= ~200);
    group axioms are verified on the full table at construction.
    """

    __slots__ = ("order", "mul", "name", "inverse_table", "_orders",
                 "product_factors", "generator")

    def __init__(self, mul, name, *, product_factors=None, generator=None,
                 validate=True):
        self.mul = np.asarray(mul, dtype=np.int32)
        self.order = int(self.mul.shape[0])
        self.name = name
        # direct-product provenance (A, B) with index a*|B| + b, if built so
        self.product_factors = product_factors
        # distinguished generator index for groups built as C_n
        self.generator = generator
        if validate:
            self._validate()
        inv = np.full(self.order, -1, dtype=np.int32)
        for a in range(self.order):
            zeros = np.nonzero(self.mul[a] == 0)[0]
            if len(zeros) != 1:
                raise ValueError(f"{name}: element {a} lacks a unique inverse")
            inv[a] = zeros[0]
        self.inverse_table = inv
        self._orders = None

    def _validate(self):
        n = self.order
        if self.mul.shape != (n, n):
            raise ValueError("multiplication table not square")
        if self.mul.min() < 0 or self.mul.max() >= n:
            raise ValueError("table entries out of range")
        if not (np.array_equal(self.mul[0], np.arange(n))
                and np.array_equal(self.mul[:, 0], np.arange(n))):
            raise ValueError("element 0 is not the identity")
        # associativity on all triples, vectorized
        left = self.mul[self.mul]             # (a,b,c) -> (ab)c
        right = self.mul[:, self.mul]         # (a,b,c) -> a(bc)
        if not np.array_equal(left, right):
            raise ValueError("multiplication table not associative")

    # -- basic queries ------------------------------------------------------

    def multiply(self, a, b):
        return int(self.mul[a, b])

    def inverse(self, a):
        return int(self.inverse_table[a])

    def element_order(self, a):
        if self._orders is None:
            self._orders = [0] * self.order
        if not self._orders[a]:
            x, o = a, 1
            while x:
                x = self.multiply(x, a)
                o += 1
            self._orders[a] = o
        return self._orders[a]

    @property
    def is_abelian(self):
        return np.array_equal(self.mul, self.mul.T)

    @property
    def is_cyclic(self):
        return any(self.element_order(a) == self.order
                   for a in range(self.order))

    def cyclic_generator(self):
        if self.generator is not None:
            return self.generator
        for a in range(self.order):
            if self.element_order(a) == self.order:
                return a
        raise ValueError(f"{self.name} is not cyclic")

    def conjugate(self, g, k):
        return self.multiply(self.multiply(g, k), self.inverse(g))

    # -- subgroup / quotient machinery --------------------------------------

    def closure(self, gens):
        """Sorted element set generated by the given indices."""
        seen = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.multiply(a, g)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return tuple(sorted(seen))

    def is_subgroup(self, elements):
        s = set(elements)
        if 0 not in s:
            return False
        return all(self.multiply(a, b) in s for a in s for b in s)

    def is_normal(self, elements):
        s = set(elements)
        return all(self.conjugate(g, k) in s
                   for g in range(self.order) for k in s)

    def subgroup(self, elements, name=None):
        """Materialize a subgroup; returns (FiniteGroup, embedding hom).

        Element 0 of the subgroup is the identity; the rest keep their
        ambient sorted order.
        """
        elements = tuple(sorted(set(elements)))
        if not self.is_subgroup(elements):
            raise ValueError("not a subgroup")
        order_map = [0] + [e for e in elements if e]
        index_of = {e: i for i, e in enumerate(order_map)}
        k = len(order_map)
        mul = [[index_of[self.multiply(order_map[i], order_map[j])]
                for j in range(k)] for i in range(k)]
        sub = FiniteGroup(mul, name or f"subgroup{k}of{self.name}")
        embed = GroupHom(sub, self, tuple(order_map))
        return sub, embed

    def quotient(self, normal_elements, name=None):
        """Quotient by a normal subgroup; returns (FiniteGroup, projection,
        coset representatives).  Cosets are represented by their least
        element; the identity coset comes first.
        """
        s = set(normal_elements)
        if not self.is_subgroup(s) or not self.is_normal(s):
            raise ValueError("not a normal subgroup")
        coset_of = {}
        reps = []
        for a in range(self.order):
            if a in coset_of:
                continue
            coset = sorted(self.multiply(a, k) for k in s)
            for b in coset:
                coset_of[b] = len(reps)
            reps.append(coset[0])
        # ensure the identity coset is index 0
        assert coset_of[0] == 0
        q = len(reps)
        mul = [[coset_of[self.multiply(reps[i], reps[j])] for j in range(q)]
               for i in range(q)]
        quo = FiniteGroup(mul, name or f"{self.name}/N")
        proj = GroupHom(self, quo,
                        tuple(coset_of[a] for a in range(self.order)))
        return quo, proj, tuple(reps)

    def direct_product(self, other, name=None):
        """Direct product with index (a, b) -> a * |other| + b."""
        n, m = self.order, other.order
        a_part = self.mul.repeat(m, axis=0).repeat(m, axis=1)
        b_part = np.tile(other.mul, (n, n))
        mul = a_part * m + b_part
        return FiniteGroup(mul, name or f"{self.name}x{other.name}",
                           product_factors=(self, other))

    def commutator_square_subgroup(self):
        """Closure of all commutators and squares; the quotient is the
        largest elementary abelian 2-quotient."""
        gens = {self.multiply(a, a) for a in range(self.order)}
        for a in range(self.order):
            for b in range(self.order):
                c = self.multiply(
                    self.multiply(a, b),
                    self.inverse(self.multiply(b, a)))
                gens.add(c)
        return self.closure(gens)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by its full image table."""

    source: FiniteGroup
    target: FiniteGroup
    mapping: tuple[int, ...]

    def __post_init__(self):
        if len(self.mapping) != self.source.order:
            raise ValueError("mapping length mismatch")
        if self.mapping[0] != 0:
            raise ValueError("identity not preserved")
        src = self.source.mul
        tgt = self.target.mul
        m = np.asarray(self.mapping, dtype=np.int32)
        if not np.array_equal(m[src], tgt[np.ix_(m, m)]):
            raise ValueError("not a homomorphism")

    def __call__(self, a):
        return self.mapping[a]

    @property
    def is_surjective(self):
        return len(set(self.mapping)) == self.target.order

    def kernel_elements(self):
        return tuple(a for a, b in enumerate(self.mapping) if b == 0)

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self after inner."""
        return GroupHom(inner.source, self.target,
                        tuple(self.mapping[x] for x in inner.mapping))


def cyclic_group(n, name=None):
    idx = np.arange(n)
    mul = (idx[:, None] + idx[None, :]) % n
    return FiniteGroup(mul, name or f"C{n}",
                       generator=1 if n > 1 else 0)


C2 = cyclic_group(2)


@dataclass(frozen=True)
class Character2:
    """Surjection onto the order-2 cyclic group, as w1-type sign data."""

    hom: GroupHom

    def __post_init__(self):
        if self.hom.target.order != 2:
            raise ValueError("target is not the order-2 group")
        if not self.hom.is_surjective:
            raise ValueError("character is not surjective")

    @staticmethod
    def from_values(group, values, target=None):
        return Character2(GroupHom(group, target or C2, tuple(values)))

    @property
    def group(self):
        return self.hom.source

    def value(self, a):
        return self.hom.mapping[a]

    @property
    def values(self):
        return self.hom.mapping

    def kernel(self):
        return self.hom.kernel_elements()

    @property
    def is_trivial(self):
        return False  # surjectivity is enforced

    def __str__(self):
        return "".join(str(v) for v in self.values)


@dataclass(frozen=True)
class OddDecomposition:
    """G as extension of a 2-group P by an odd-order normal subgroup K."""

    group: FiniteGroup
    kernel: FiniteGroup
    embed: GroupHom
    quotient: FiniteGroup
    project: GroupHom
    coset_reps: tuple[int, ...]


# ---------------------------------------------------------------------------
# Parsing


_CYCLIC_RE = re.compile(r"^C(\d+)$")
_DIHEDRAL_RE = re.compile(r"^D(\d+)$")
_PERM_RE = re.compile(r"^perm\[(.*)\]$")


def parse_group(spec: str) -> FiniteGroup:
    """Parse a group expression.

    Grammar: ``Cn`` (cyclic), ``Dn`` (dihedral of order 2n),
    ``AxB``/``A×B`` (direct product), ``perm[(1 2 3)(4 5), ...]``
    (permutation generators, cycles on positive integers).
    """
    spec = spec.strip()
    if not spec:
        raise ParseError("empty group spec")
    parts = _split_product(spec)
    if len(parts) > 1:
        group = parse_group(parts[0])
        for part in parts[1:]:
            group = group.direct_product(parse_group(part))
        return group
    m = _CYCLIC_RE.match(spec)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ParseError("cyclic order must be >= 1")
        return cyclic_group(n)
    m = _DIHEDRAL_RE.match(spec)
    if m:
        return dihedral_group(int(m.group(1)))
    m = _PERM_RE.match(spec)
    if m:
        return permutation_group(m.group(1))
    raise ParseError(f"cannot parse group spec {spec!r}")


def _split_product(spec):
    parts = []
    depth = 0
    cur = []
    for ch in spec:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if depth == 0 and (ch == "x" or ch == "×"):
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    if any(not p.strip() for p in parts):
        raise ParseError(f"malformed product expression {spec!r}")
    return [p.strip() for p in parts]


def dihedral_group(n, name=None):
    """Dihedral group of order 2n: rotations r^i and reflections r^i s,
    indexed i + n*j with j the reflection bit."""
    if n < 1:
        raise ParseError("dihedral parameter must be >= 1")
    mul = [[0] * (2 * n) for _ in range(2 * n)]
    for i1 in range(n):
        for j1 in range(2):
            for i2 in range(n):
                for j2 in range(2):
                    i = (i1 + (i2 if j1 == 0 else -i2)) % n
                    j = (j1 + j2) % 2
                    mul[i1 + n * j1][i2 + n * j2] = i + n * j
    return FiniteGroup(mul, name or f"D{n}")


def permutation_group(body: str) -> FiniteGroup:
    """Group generated by permutations in cycle notation."""
    gens = _parse_perm_generators(body)
    if not gens:
        raise ParseError("no permutation generators given")
    degree = max(len(g) for g in gens)
    gens = [tuple(g) + tuple(range(len(g), degree)) for g in gens]
    ident = tuple(range(degree))
    elements = {ident: 0}
    order_list = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in elements:
                    if len(elements) > 400:
                        raise ParseError("generated group too large")
                    elements[q] = len(order_list)
                    order_list.append(q)
                    nxt.append(q)
        frontier = nxt
    # reindex: identity first, remaining elements sorted for determinism
    order_list = [ident] + sorted(p for p in order_list if p != ident)
    index = {p: i for i, p in enumerate(order_list)}
    size = len(order_list)
    mul = [[index[tuple(a[b[i]] for i in range(degree))]
            for b in order_list] for a in order_list]
    return FiniteGroup(mul, f"perm[{body.strip()}] (order {size})")


def _parse_perm_generators(body):
    gens = []
    pos = 0
    body = body.strip()
    while pos < len(body):
        ch = body[pos]
        if ch in ", ":
            pos += 1
            continue
        if ch != "(":
            raise ParseError(f"unexpected character {ch!r} in permutation")
        cycles = []
        while pos < len(body) and body[pos] == "(":
            end = body.find(")", pos)
            if end < 0:
                raise ParseError("unbalanced parenthesis in permutation")
            inner = body[pos + 1:end].replace(",", " ").split()
            try:
                cycle = [int(x) for x in inner]
            except ValueError as exc:
                raise ParseError(f"bad cycle {body[pos:end + 1]!r}") from exc
            if len(set(cycle)) != len(cycle) or any(x < 1 for x in cycle):
                raise ParseError(f"invalid cycle {body[pos:end + 1]!r}")
            cycles.append(cycle)
            pos = end + 1
        degree = max((x for c in cycles for x in c), default=0)
        perm = list(range(degree))
        moved = set()
        for cycle in cycles:
            for x in cycle:
                if x - 1 in moved:
                    raise ParseError("cycles in one generator overlap")
                moved.add(x - 1)
            for i, x in enumerate(cycle):
                perm[x - 1] = cycle[(i + 1) % len(cycle)] - 1
        gens.append(tuple(perm))
    return gens


# ---------------------------------------------------------------------------
# Characters and decomposition


def orientation_characters(group: FiniteGroup) -> list[Character2]:
    """All surjections G -> Z/2, i.e. candidate first Stiefel-Whitney data.

    There are 2^r - 1 of them where r is the 2-rank of the abelianization.
    Returned sorted by value table for determinism.
    """
    comm_sq = group.commutator_square_subgroup()
    quo, proj, _ = group.quotient(comm_sq)
    # quo is elementary abelian of order 2^r; give it GF(2) coordinates
    coords = {0: 0}
    basis = []
    for q in range(quo.order):
        if q in coords:
            continue
        bit = 1 << len(basis)
        basis.append(q)
        for known, vec in list(coords.items()):
            coords[quo.multiply(known, q)] = vec | bit
    r = len(basis)
    out = []
    for functional in range(1, 1 << r):
        values = tuple(
            bin(functional & coords[proj(a)]).count("1") & 1
            for a in range(group.order))
        out.append(Character2.from_values(group, values))
    out.sort(key=lambda ch: ch.values)
    return out


def odd_normal_complement(group: FiniteGroup) -> OddDecomposition | None:
    """Decompose G as odd-order normal K with 2-group quotient P, if
    possible.

    Any such K must contain every odd-order element (their image in a
    2-group is trivial), so K exists iff the odd-order elements form a
    subgroup of full odd part; that K is then unique and automatically
    normal, making the spec's maximal-order tie-break vacuous.
    """
    n = group.order
    odd_part = n
    while odd_part % 2 == 0:
        odd_part //= 2
    odd_elements = tuple(a for a in range(n)
                         if group.element_order(a) % 2 == 1)
    if len(odd_elements) != odd_part:
        return None
    if not group.is_subgroup(odd_elements):
        return None
    kernel, embed = group.subgroup(odd_elements, name=f"K({group.name})")
    quotient, project, reps = group.quotient(odd_elements,
                                             name=f"P({group.name})")
    return OddDecomposition(group, kernel, embed, quotient, project, reps)


def conjugation_action(decomp: OddDecomposition) -> list[GroupHom]:
    """For each coset representative g, the automorphism k -> g k g^-1 of K,
    expressed in K's own indexing.  Representatives fix the inner-ambiguity
    convention: the action is well defined up to inner automorphisms of K.
    """
    g_group = decomp.group
    k_group = decomp.kernel
    amb_index = {decomp.embed(i): i for i in range(k_group.order)}
    out = []
    for g in decomp.coset_reps:
        images = []
        for i in range(k_group.order):
            c = g_group.conjugate(g, decomp.embed(i))
            if c not in amb_index:
                raise ValueError("kernel is not normal")
            images.append(amb_index[c])
        out.append(GroupHom(k_group, k_group, tuple(images)))
    return out


def abelian_cyclic_decomposition(group: FiniteGroup) -> tuple[int, ...]:
    """Elements generating cyclic subgroups whose internal direct sum is
    the whole abelian group (first generator of maximal order).

    Uses the classical basis construction: an element of maximal order
    spans a direct summand, and generators of the quotient lift to
    generators of the same order.  The result is verified by enumerating
    all mixed-radix products before returning.
    """
    if not group.is_abelian:
        raise ValueError(f"{group.name} is not abelian")

    def pw(grp, a, n):
        x = 0
        for _ in range(n):
            x = grp.multiply(x, a)
        return x

    def decompose(g):
        if g.order == 1:
            return []
        gen = max(range(g.order), key=g.element_order)
        e = g.element_order(gen)
        powers = [0]
        while len(powers) < e:
            powers.append(g.multiply(powers[-1], gen))
        log = {p: i for i, p in enumerate(powers)}
        quo, _, reps = g.quotient(tuple(sorted(powers)))
        out = [gen]
        for qgen, k in decompose(quo):
            h0 = reps[qgen]
            m = log[pw(g, h0, k)]
            # k divides m because e is the exponent of g, so the lift can
            # be corrected to have order exactly k
            if m % k:
                raise AssertionError("maximal-order summand lift failed")
            h = g.multiply(h0, pw(g, gen, (-(m // k)) % e))
            out.append(h)
        return [(h, g.element_order(h)) for h in out]

    gens = tuple(h for h, _ in decompose(group))
    orders = [group.element_order(h) for h in gens]
    # verify: the product map over mixed-radix exponents is a bijection
    total = 1
    seen = {0}
    elems = [0]
    for h, o in zip(gens, orders):
        total *= o
        new = []
        for e in elems:
            x = e
            for _ in range(o - 1):
                x = group.multiply(x, h)
                new.append(x)
        for x in new:
            if x in seen:
                raise AssertionError("cyclic decomposition is not direct")
            seen.add(x)
        elems.extend(new)
    if total != group.order:
        raise AssertionError("cyclic decomposition does not span")
    return gens


def is_inner_automorphism(k_group: FiniteGroup, auto: GroupHom) -> bool:
    return any(
        all(auto(i) == k_group.conjugate(w, i) for i in range(k_group.order))
        for w in range(k_group.order))

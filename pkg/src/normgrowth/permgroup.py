"""Finite permutation groups, fully enumerated, with index-based arithmetic.

A group is stored as the (n, degree) array of image rows of its elements in
BFS discovery order, identity first.  All downstream modules address elements
by their row index; products and inverses resolve indices through a perfect
key on a small base of points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    EmptyWord,
    NoCharacteristic,
    NotBijective,
    ParseError,
)

DEFAULT_ORDER_CAP = 25_000
# cap on the number of word evaluations |G|**arity
DEFAULT_WORD_CAP = 4_000_000
# target row count per vectorized block
_CHUNK_ROWS = 1 << 20


class Permutation:
    """A permutation of {0, ..., degree-1} given by its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(int(x) for x in images)
        if not imgs or sorted(imgs) != list(range(len(imgs))):
            raise NotBijective(f"images {imgs} are not a bijection on >= 1 points")
        self.images = imgs

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int) -> "Permutation":
        """Build from disjoint cycles; points outside the cycles stay fixed."""
        images = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for pt in cyc:
                if not 0 <= pt < degree:
                    raise NotBijective(f"point {pt} outside degree {degree}")
                if pt in seen:
                    raise NotBijective(f"point {pt} repeated across cycles")
                seen.add(pt)
            for i, pt in enumerate(cyc):
                images[pt] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (self * other)(x) = self(other(x))."""
        if self.degree != other.degree:
            raise NotBijective("degree mismatch in product")
        return Permutation(self.images[i] for i in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, img in enumerate(self.images):
            inv[img] = i
        return Permutation(inv)

    def order(self) -> int:
        return _order_from_row(np.asarray(self.images))

    def is_identity(self) -> bool:
        return all(i == img for i, img in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        out = []
        seen = [False] * self.degree
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "Permutation(id)"
        return "Permutation(" + " ".join(
            "(" + " ".join(map(str, c)) + ")" for c in cycs
        ) + ")"


def _order_from_row(row: np.ndarray) -> int:
    """Order of a permutation = lcm of its cycle lengths."""
    n = row.shape[0]
    seen = np.zeros(n, dtype=bool)
    order = 1
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        pt = start
        while not seen[pt]:
            seen[pt] = True
            pt = int(row[pt])
            length += 1
        order = order * length // math.gcd(order, length)
    return order


class FiniteGroup:
    """A fully enumerated permutation group addressed by element index.

    Element 0 is always the identity.  `perms[i]` is the image row of element
    i; products of known elements are resolved back to indices through a key
    on a base of points whose pointwise stabilizer is trivial.
    """

    def __init__(
        self,
        perms: np.ndarray,
        label: str,
        generator_indices: Sequence[int],
        characteristic: Optional[int] = None,
        field_order: Optional[int] = None,
        simple: bool = False,
    ):
        self.perms = np.ascontiguousarray(perms, dtype=np.int32)
        self.n, self.degree = self.perms.shape
        self.label = label
        self.generators = tuple(int(i) for i in generator_indices)
        self.characteristic = characteristic
        self.field_order = field_order
        self.simple = simple
        self._build_index()
        self._inverse: Optional[np.ndarray] = None
        self._gen_conj: Optional[list[np.ndarray]] = None
        self._division_table: Optional[np.ndarray] = None

    # -- index machinery ---------------------------------------------------

    def _build_index(self) -> None:
        base: list[int] = []
        stab = np.ones(self.n, dtype=bool)
        while stab.sum() > 1:
            moved = (self.perms[stab] != np.arange(self.degree)).any(axis=0)
            pt = int(np.flatnonzero(moved)[0])
            base.append(pt)
            stab &= self.perms[:, pt] == pt
        self.base = tuple(base)
        if not base:
            self._keys = None
            return
        radix = [1]
        for _ in range(len(base) - 1):
            radix.append(radix[-1] * self.degree)
        if radix[-1] * self.degree >= 2 ** 62:
            # huge-degree corner: fall back to a python dict on the base columns
            self._keys = None
            cols = self.perms[:, list(base)]
            self._dict = {cols[i].tobytes(): i for i in range(self.n)}
            self._base_list = list(base)
            return
        self._radix = np.asarray(radix, dtype=np.int64)
        keys = self.perms[:, list(base)].astype(np.int64) @ self._radix
        self._key_order = np.argsort(keys, kind="stable").astype(np.int64)
        self._keys = keys[self._key_order]

    def index_of(self, rows: np.ndarray) -> np.ndarray:
        """Map image rows (m, degree) of known elements back to indices."""
        rows = np.asarray(rows)
        if rows.ndim == 1:
            rows = rows[None, :]
        if self.n == 1:
            return np.zeros(rows.shape[0], dtype=np.int64)
        if self._keys is None:
            base_cols = rows[:, self._base_list].astype(np.int32)
            return np.fromiter(
                (self._dict[base_cols[i].tobytes()] for i in range(rows.shape[0])),
                dtype=np.int64,
                count=rows.shape[0],
            )
        qk = rows[:, list(self.base)].astype(np.int64) @ self._radix
        pos = np.searchsorted(self._keys, qk)
        pos = np.clip(pos, 0, self.n - 1)
        idx = self._key_order[pos]
        if not (self._keys[pos] == qk).all():
            raise KeyError("row is not an element of the group")
        return idx

    # -- element arithmetic -------------------------------------------------

    @property
    def identity(self) -> int:
        return 0

    @property
    def inverse_of(self) -> np.ndarray:
        """inverse_of[i] = index of the inverse of element i."""
        if self._inverse is None:
            inv_rows = np.empty_like(self.perms)
            rows = np.arange(self.n)[:, None]
            inv_rows[rows, self.perms] = np.arange(self.degree, dtype=np.int32)
            self._inverse = self.index_of(inv_rows)
        return self._inverse

    def mul(self, a: int, b: int) -> int:
        """Index of the product a*b with (a*b)(x) = a(b(x))."""
        return int(self.index_of(self.perms[a][self.perms[b]])[0])

    def inv(self, a: int) -> int:
        return int(self.inverse_of[a])

    def permutation(self, i: int) -> Permutation:
        return Permutation(self.perms[i])

    def element_order(self, i: int) -> int:
        return _order_from_row(self.perms[i])

    def left_translate(self, g: int, idxs: np.ndarray) -> np.ndarray:
        """Indices of g*x for x in idxs."""
        return self.index_of(self.perms[g][self.perms[np.asarray(idxs)]])

    def right_translate(self, idxs: np.ndarray, g: int) -> np.ndarray:
        """Indices of x*g for x in idxs."""
        return self.index_of(self.perms[np.asarray(idxs)][:, self.perms[g]])

    def pairwise_product_indices(self, a_idx: np.ndarray, b_idx: np.ndarray) -> np.ndarray:
        """Indices of all products a*b, shape (len(a_idx), len(b_idx))."""
        a_idx = np.asarray(a_idx)
        b_idx = np.asarray(b_idx)
        pb = self.perms[b_idx]
        rows = self.perms[a_idx][:, pb]
        return self.index_of(rows.reshape(-1, self.degree)).reshape(
            len(a_idx), len(b_idx)
        )

    def conjugate_indices(self, idxs: np.ndarray, g: int) -> np.ndarray:
        """Indices of g*x*g^-1 for x in idxs."""
        ginv = self.inv(g)
        inner = self.perms[np.asarray(idxs)][:, self.perms[ginv]]
        return self.index_of(self.perms[g][inner])

    def generator_conjugation_maps(self) -> list[np.ndarray]:
        """For each generator g, the full map x -> g*x*g^-1 as an index array."""
        if self._gen_conj is None:
            all_idx = np.arange(self.n)
            self._gen_conj = [
                self.conjugate_indices(all_idx, g) for g in self.generators
            ]
        return self._gen_conj

    def division_table(self) -> np.ndarray:
        """dt[g, h] = index of g^-1 * h.  Cached; quadratic memory."""
        if self._division_table is None:
            inv = self.inverse_of
            dt = np.empty((self.n, self.n), dtype=np.int32)
            for g in range(self.n):
                rows = self.perms[inv[g]][self.perms]
                dt[g] = self.index_of(rows)
            self._division_table = dt
        return self._division_table

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label}, n={self.n}, degree={self.degree})"


def closure(
    generators: Sequence[Permutation],
    cap: int = DEFAULT_ORDER_CAP,
    label: str = "closure",
    characteristic: Optional[int] = None,
    field_order: Optional[int] = None,
    simple: bool = False,
) -> FiniteGroup:
    """BFS closure of a generator list under right multiplication.

    Elements are discovered in breadth-first order, identity first, with the
    generators applied in the given order; this fixes the canonical element
    indexing for everything downstream.
    """
    if not generators:
        generators = []
        degree = 1
    else:
        degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise NotBijective("generators must share one degree")
    gen_rows = [np.asarray(g.images, dtype=np.int32) for g in generators]
    ident = np.arange(degree, dtype=np.int32)
    rows: list[np.ndarray] = [ident]
    index = {ident.tobytes(): 0}
    head = 0
    while head < len(rows):
        current = rows[head]
        head += 1
        for grow in gen_rows:
            new = current[grow]
            key = new.tobytes()
            if key not in index:
                if len(rows) >= cap:
                    raise CapExceeded(
                        f"closure exceeded cap of {cap} elements"
                    )
                index[key] = len(rows)
                rows.append(new)
    perms = np.vstack(rows) if rows else ident[None, :]
    group = FiniteGroup(
        perms,
        label=label,
        generator_indices=[index[r.tobytes()] for r in gen_rows],
        characteristic=characteristic,
        field_order=field_order,
        simple=simple,
    )
    return group


def build_symmetric(m: int) -> FiniteGroup:
    """The symmetric group on m points, 2 <= m <= 9."""
    if not 2 <= m <= 9:
        raise CapExceeded(f"symmetric group size {m} outside supported range 2..9")
    gens = [Permutation.from_cycles([(0, 1)], m)]
    if m > 2:
        gens.append(Permutation.from_cycles([tuple(range(m))], m))
    group = closure(gens, cap=math.factorial(m) + 1, label=f"S{m}")
    assert group.n == math.factorial(m)
    return group


def build_alternating(m: int) -> FiniteGroup:
    """The alternating group on m points, 2 <= m <= 9."""
    if not 2 <= m <= 9:
        raise CapExceeded(f"alternating group size {m} outside supported range 2..9")
    if m == 2:
        # trivial group acting on two points
        return FiniteGroup(
            np.arange(2, dtype=np.int32)[None, :], "A2", generator_indices=[]
        )
    if m == 3:
        gens = [Permutation.from_cycles([(0, 1, 2)], 3)]
    elif m % 2 == 1:
        gens = [
            Permutation.from_cycles([(0, 1, 2)], m),
            Permutation.from_cycles([tuple(range(m))], m),
        ]
    else:
        gens = [
            Permutation.from_cycles([(0, 1, 2)], m),
            Permutation.from_cycles([tuple(range(1, m))], m),
        ]
    group = closure(
        gens, cap=math.factorial(m) // 2 + 1, label=f"A{m}", simple=m >= 5
    )
    assert group.n == math.factorial(m) // 2
    return group


# -- conjugacy classes -----------------------------------------------------


@dataclass(frozen=True)
class ClassTable:
    """Conjugacy-class partition of a group, classes sorted by (size, rep)."""

    group: FiniteGroup
    class_of: np.ndarray          # (n,) class index per element
    classes: tuple[np.ndarray, ...]  # element indices per class, ascending
    sizes: np.ndarray             # (k,) class sizes
    reps: np.ndarray              # (k,) smallest element index per class
    inverse_class: np.ndarray     # (k,) class of the inverse
    is_real: np.ndarray           # (k,) class equals its inverse class
    rep_orders: np.ndarray        # (k,) element order of each representative

    @property
    def n_classes(self) -> int:
        return len(self.sizes)

    def mask_of_classes(self, indices: Iterable[int]) -> np.ndarray:
        mask = np.zeros(self.group.n, dtype=bool)
        for i in indices:
            mask[self.classes[int(i)]] = True
        return mask


def compute_classes(group: FiniteGroup) -> ClassTable:
    """Partition the group into conjugacy classes by generator-orbit BFS."""
    n = group.n
    conj_maps = group.generator_conjugation_maps()
    assigned = np.full(n, -1, dtype=np.int64)
    orbits: list[np.ndarray] = []
    for start in range(n):
        if assigned[start] >= 0:
            continue
        orbit_mask = np.zeros(n, dtype=bool)
        orbit_mask[start] = True
        frontier = np.array([start], dtype=np.int64)
        while frontier.size:
            images = (
                np.concatenate([cm[frontier] for cm in conj_maps])
                if conj_maps
                else np.empty(0, dtype=np.int64)
            )
            fresh = images[~orbit_mask[images]]
            if fresh.size == 0:
                break
            fresh = np.unique(fresh)
            orbit_mask[fresh] = True
            frontier = fresh
        members = np.flatnonzero(orbit_mask)
        assigned[members] = len(orbits)
        orbits.append(members)
    order = sorted(range(len(orbits)), key=lambda i: (len(orbits[i]), orbits[i][0]))
    classes = tuple(orbits[i] for i in order)
    class_of = np.empty(n, dtype=np.int64)
    for new_idx, members in enumerate(classes):
        class_of[members] = new_idx
    sizes = np.array([len(c) for c in classes], dtype=np.int64)
    reps = np.array([c[0] for c in classes], dtype=np.int64)
    inverse_class = class_of[group.inverse_of[reps]]
    is_real = inverse_class == np.arange(len(classes))
    rep_orders = np.array([group.element_order(int(r)) for r in reps], dtype=np.int64)
    assert sizes[0] == 1 and reps[0] == 0, "identity class must come first"
    return ClassTable(
        group=group,
        class_of=class_of,
        classes=classes,
        sizes=sizes,
        reps=reps,
        inverse_class=inverse_class,
        is_real=is_real,
        rep_orders=rep_orders,
    )


# -- real / coprime-order census --------------------------------------------


@dataclass(frozen=True)
class RealReport:
    """Census of classes fixed by inversion.

    An element counts as coprime-order (often called semisimple in the
    matrix-group setting) when its order is coprime to the group's defining
    characteristic.
    """

    label: str
    n: int
    n_classes: int
    real_classes: int
    real_elements: int
    non_real_classes: tuple[int, ...]
    characteristic: Optional[int]
    coprime_order_classes: Optional[tuple[int, ...]]
    non_real_coprime_order_classes: Optional[tuple[int, ...]]

    @property
    def real_element_fraction(self) -> float:
        return self.real_elements / self.n


def real_census(
    group: FiniteGroup,
    table: ClassTable,
    include_coprime_order: Optional[bool] = None,
) -> RealReport:
    """Count real classes/elements; filter by coprime order when p is known."""
    if include_coprime_order is None:
        include_coprime_order = group.characteristic is not None
    if include_coprime_order and group.characteristic is None:
        raise NoCharacteristic(
            f"group {group.label} has no defining characteristic"
        )
    real = table.is_real
    non_real = tuple(int(i) for i in np.flatnonzero(~real))
    coprime: Optional[tuple[int, ...]] = None
    non_real_coprime: Optional[tuple[int, ...]] = None
    if include_coprime_order:
        p = group.characteristic
        cop_mask = np.array([o % p != 0 for o in table.rep_orders])
        coprime = tuple(int(i) for i in np.flatnonzero(cop_mask))
        non_real_coprime = tuple(
            int(i) for i in np.flatnonzero(cop_mask & ~real)
        )
    return RealReport(
        label=group.label,
        n=group.n,
        n_classes=table.n_classes,
        real_classes=int(real.sum()),
        real_elements=int(table.sizes[real].sum()),
        non_real_classes=non_real,
        characteristic=group.characteristic,
        coprime_order_classes=coprime,
        non_real_coprime_order_classes=non_real_coprime,
    )


# -- word images -------------------------------------------------------------

_LETTER_VAR = {"x": (0, 1), "X": (0, -1), "y": (1, 1), "Y": (1, -1)}


def parse_word(text: str) -> list[tuple[int, int]]:
    """Parse a word over {x, y, X, Y} into (variable, sign) letters.

    Capital letters are inverses.  The word is freely reduced; a word that
    reduces to nothing raises EmptyWord.
    """
    if not text:
        raise EmptyWord("empty word")
    letters: list[tuple[int, int]] = []
    for ch in text:
        if ch not in _LETTER_VAR:
            raise ParseError(f"bad letter {ch!r} in word {text!r}")
        var, sign = _LETTER_VAR[ch]
        if letters and letters[-1] == (var, -sign):
            letters.pop()
        else:
            letters.append((var, sign))
    if not letters:
        raise EmptyWord(f"word {text!r} reduces to the empty word")
    return letters


def word_arity(text: str) -> int:
    return len({var for var, _ in parse_word(text)})


def word_image(
    group: FiniteGroup, word: str, cap: int = DEFAULT_WORD_CAP
) -> np.ndarray:
    """Boolean mask of the image of the word map over all argument tuples."""
    letters = parse_word(word)
    variables = sorted({var for var, _ in letters})
    remap = {v: i for i, v in enumerate(variables)}
    letters = [(remap[v], s) for v, s in letters]
    arity = len(variables)
    n, d = group.n, group.degree
    total = n ** arity
    if total > cap:
        raise CapExceeded(
            f"word evaluation needs {total} tuples, cap is {cap}"
        )
    inv = group.inverse_of
    mask = np.zeros(n, dtype=bool)
    ident_row = np.arange(d, dtype=np.int32)
    chunk = max(1, _CHUNK_ROWS // max(d, 1))
    if arity == 1:
        idx_all = np.arange(n)
        for lo in range(0, n, chunk):
            g1 = idx_all[lo : lo + chunk]
            rows = np.broadcast_to(ident_row, (len(g1), d)).copy()
            for var, sign in letters:
                factor = g1 if sign > 0 else inv[g1]
                rows = np.take_along_axis(rows, group.perms[factor], axis=1)
            mask[group.index_of(rows)] = True
    else:
        per = max(1, chunk // n)
        for lo in range(0, n, per):
            g1 = np.repeat(np.arange(lo, min(lo + per, n)), n)
            g2 = np.tile(np.arange(n), min(per, n - lo))
            rows = np.broadcast_to(ident_row, (len(g1), d)).copy()
            for var, sign in letters:
                base = g1 if var == 0 else g2
                factor = base if sign > 0 else inv[base]
                rows = np.take_along_axis(rows, group.perms[factor], axis=1)
            mask[group.index_of(rows)] = True
    return mask


# -- cycle-notation parsing (generator files) --------------------------------


def parse_cycle_line(line: str) -> list[tuple[int, ...]]:
    """Parse one line of whitespace-separated cycles like "(0 1 2) (3 4)"."""
    cycles: list[tuple[int, ...]] = []
    rest = line.strip()
    while rest:
        if not rest.startswith("("):
            raise ParseError(f"expected '(' in cycle line {line!r}")
        close = rest.find(")")
        if close < 0:
            raise ParseError(f"unbalanced parentheses in {line!r}")
        body = rest[1:close].replace(",", " ").split()
        try:
            cyc = tuple(int(tok) for tok in body)
        except ValueError as exc:
            raise ParseError(f"bad point in cycle line {line!r}") from exc
        if not cyc:
            raise ParseError(f"empty cycle in {line!r}")
        cycles.append(cyc)
        rest = rest[close + 1 :].strip()
    if not cycles:
        raise ParseError(f"no cycles on line {line!r}")
    return cycles


def generators_from_text(text: str) -> list[Permutation]:
    """Parse generator permutations, one cycle-notation line each."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ParseError("generator file has no generator lines")
    parsed = [parse_cycle_line(ln) for ln in lines]
    degree = 1 + max(pt for cycles in parsed for cyc in cycles for pt in cyc)
    return [Permutation.from_cycles(cycles, degree) for cycles in parsed]

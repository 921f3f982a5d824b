"""Element subsets and unions of conjugacy classes, plus subset expressions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from .errors import EmptySubset, NotNormal, ParseError
from .permgroup import ClassTable, FiniteGroup, word_image


@dataclass(frozen=True)
class Subset:
    """An arbitrary element set as a boolean mask over element indices."""

    mask: np.ndarray

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "Subset":
        mask = np.zeros(n, dtype=bool)
        mask[np.asarray(list(indices), dtype=np.int64)] = True
        return cls(mask)

    @classmethod
    def full(cls, n: int) -> "Subset":
        return cls(np.ones(n, dtype=bool))

    @property
    def size(self) -> int:
        return int(self.mask.sum())

    @property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __contains__(self, idx: int) -> bool:
        return bool(self.mask[idx])


@dataclass(frozen=True)
class NormalSubset:
    """A union of conjugacy classes of a fixed group."""

    ct: ClassTable
    class_indices: tuple[int, ...]
    mask: np.ndarray
    symmetric: bool

    @classmethod
    def from_classes(cls, ct: ClassTable, indices: Iterable[int]) -> "NormalSubset":
        idxs = tuple(sorted(set(int(i) for i in indices)))
        for i in idxs:
            if not 0 <= i < ct.n_classes:
                raise ParseError(f"class index {i} out of range for {ct.group.label}")
        mask = ct.mask_of_classes(idxs)
        sym = set(idxs) == {int(ct.inverse_class[i]) for i in idxs}
        return cls(ct=ct, class_indices=idxs, mask=mask, symmetric=sym)

    @classmethod
    def from_subset(cls, ct: ClassTable, subset: Union[Subset, np.ndarray]) -> "NormalSubset":
        """Interpret an element set as a union of classes; NotNormal otherwise."""
        mask = subset.mask if isinstance(subset, Subset) else np.asarray(subset, dtype=bool)
        hit = np.unique(ct.class_of[mask]) if mask.any() else np.array([], dtype=np.int64)
        covered = ct.mask_of_classes(hit)
        if not (covered == mask).all():
            partial = [int(c) for c in hit if not mask[ct.classes[c]].all()]
            raise NotNormal(f"subset meets classes {partial} only partially")
        return cls.from_classes(ct, hit)

    @property
    def size(self) -> int:
        return int(self.mask.sum())

    @property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    @property
    def group(self) -> FiniteGroup:
        return self.ct.group

    def as_subset(self) -> Subset:
        return Subset(self.mask)

    def is_trivial(self) -> bool:
        """Empty, or exactly the identity class."""
        return self.class_indices in ((), (0,))

    def expr(self) -> str:
        return "classes:" + ",".join(str(i) for i in self.class_indices)


SubsetLike = Union[Subset, NormalSubset, np.ndarray]


def subset_mask(s: SubsetLike) -> np.ndarray:
    if isinstance(s, (Subset, NormalSubset)):
        return s.mask
    return np.asarray(s, dtype=bool)


def subset_size(s: SubsetLike) -> int:
    return int(subset_mask(s).sum())


def parse_subset_expr(
    text: str, group: FiniteGroup, ct: ClassTable
) -> NormalSubset:
    """Parse a subset expression into a union of classes.

    Forms: "class:i", "classes:i,j,...", "all-nonid", "complement-real",
    "word:<w>" (image of the word map, always a normal subset).
    """
    text = text.strip()
    if text == "all-nonid":
        return NormalSubset.from_classes(ct, range(1, ct.n_classes))
    if text == "complement-real":
        return NormalSubset.from_classes(
            ct, [int(i) for i in np.flatnonzero(~ct.is_real)]
        )
    if text.startswith("class:"):
        body = text[len("class:"):]
        try:
            return NormalSubset.from_classes(ct, [int(body)])
        except ValueError as exc:
            raise ParseError(f"bad class index in {text!r}") from exc
    if text.startswith("classes:"):
        body = text[len("classes:"):]
        try:
            idxs = [int(tok) for tok in body.split(",") if tok != ""]
        except ValueError as exc:
            raise ParseError(f"bad class list in {text!r}") from exc
        if not idxs:
            raise ParseError(f"empty class list in {text!r}")
        return NormalSubset.from_classes(ct, idxs)
    if text.startswith("word:"):
        img = word_image(group, text[len("word:"):])
        return NormalSubset.from_subset(ct, img)
    raise ParseError(f"unrecognized subset expression {text!r}")


def require_nonempty(s: SubsetLike, what: str = "subset") -> None:
    if subset_size(s) == 0:
        raise EmptySubset(f"{what} is empty")


def enumerate_normal_subsets(
    ct: ClassTable,
    include_identity_class: bool = True,
    nonempty: bool = True,
) -> list[NormalSubset]:
    """All unions of classes, in bitmask order over class indices."""
    pool = list(range(ct.n_classes)) if include_identity_class else list(
        range(1, ct.n_classes)
    )
    out = []
    for bits in range(0 if not nonempty else 1, 1 << len(pool)):
        idxs = [pool[i] for i in range(len(pool)) if bits >> i & 1]
        out.append(NormalSubset.from_classes(ct, idxs))
    return out


def random_normal_subset(
    ct: ClassTable, rng: np.random.Generator, include_identity_class: bool = True
) -> NormalSubset:
    """A uniformly random nonempty union of classes."""
    pool = list(range(ct.n_classes)) if include_identity_class else list(
        range(1, ct.n_classes)
    )
    while True:
        pick = [i for i in pool if rng.integers(2)]
        if pick:
            return NormalSubset.from_classes(ct, pick)


def random_subset(
    n: int, rng: np.random.Generator, density: Optional[float] = None
) -> Subset:
    """A random nonempty element set; density drawn uniformly when not given."""
    while True:
        d = rng.uniform(0.0, 1.0) if density is None else density
        mask = rng.random(n) < d
        if mask.any():
            return Subset(mask)

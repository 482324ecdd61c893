"""Finite topological spaces, monads, and separation-property deciders.

Every point of a finite space has a smallest open neighbourhood, its monad.
Each separation property gets two independent decision routes: one phrased in
terms of monads, and a classical oracle phrased by quantifying over opens and
closed sets.  The audit harness asserts the two routes agree on every space
it enumerates; disagreement is a bug, not a mathematical discovery.

Subsets of a space are bit masks internally; public helpers convert to and
from frozensets of point labels.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Optional, Sequence, Union


class SpaceError(Exception):
    pass


class MissingEmptyOrFull(SpaceError):
    pass


class NotClosedUnderUnion(SpaceError):
    pass


class NotClosedUnderIntersection(SpaceError):
    pass


class DuplicateOpen(SpaceError):
    pass


class TooLarge(SpaceError):
    pass


class NotTotal(SpaceError):
    pass


class AuditFailure(SpaceError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


SubsetLike = Union[int, Iterable]


class FinSpace:
    """A validated finite topological space with cached monads."""

    __slots__ = ("points", "opens", "n", "full", "_index", "_monad", "_opens_set")

    def __init__(self, points: Sequence, opens: Iterable[int], _validated: bool = False):
        pts = tuple(points)
        if len(set(pts)) != len(pts):
            raise SpaceError(f"duplicate point labels in {pts!r}")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "n", len(pts))
        object.__setattr__(self, "full", (1 << len(pts)) - 1)
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(pts)})
        masks = tuple(sorted(opens))
        if not _validated:
            masks = _check_topology(masks, self.full)
        object.__setattr__(self, "opens", masks)
        object.__setattr__(self, "_opens_set", frozenset(masks))
        monad = []
        for i in range(self.n):
            m = self.full
            bit = 1 << i
            for o in masks:
                if o & bit:
                    m &= o
            monad.append(m)
        object.__setattr__(self, "_monad", tuple(monad))

    def __setattr__(self, *a):
        raise AttributeError("FinSpace is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, FinSpace)
            and self.points == other.points
            and self.opens == other.opens
        )

    def __hash__(self):
        return hash((self.points, self.opens))

    def __repr__(self):
        return f"FinSpace(points={list(self.points)}, opens={self.opens_as_labels()})"

    # -- subsets -------------------------------------------------------------

    def mask(self, subset: SubsetLike) -> int:
        if isinstance(subset, int):
            if not 0 <= subset <= self.full:
                raise SpaceError(f"mask {subset} out of range")
            return subset
        m = 0
        for label in subset:
            try:
                m |= 1 << self._index[label]
            except KeyError:
                raise SpaceError(f"unknown point {label!r}") from None
        return m

    def labels(self, mask: int) -> frozenset:
        return frozenset(self.points[i] for i in range(self.n) if mask >> i & 1)

    def sorted_labels(self, mask: int) -> list:
        return [self.points[i] for i in range(self.n) if mask >> i & 1]

    def subsets(self) -> Iterator[int]:
        return iter(range(self.full + 1))

    def is_open(self, subset: SubsetLike) -> bool:
        return self.mask(subset) in self._opens_set

    def is_closed(self, subset: SubsetLike) -> bool:
        return (self.full ^ self.mask(subset)) in self._opens_set

    def closed_sets(self) -> list[int]:
        return sorted(self.full ^ o for o in self.opens)

    # -- monads --------------------------------------------------------------

    def monad_mask(self, i: int) -> int:
        return self._monad[i]

    def monad(self, point) -> frozenset:
        """Smallest open neighbourhood of the point."""
        return self.labels(self._monad[self._index[point]])

    def monad_set_mask(self, mask: int) -> int:
        out = self.full
        for o in self.opens:
            if o & mask == mask:
                out &= o
        return out

    def monad_set(self, subset: SubsetLike) -> frozenset:
        return self.labels(self.monad_set_mask(self.mask(subset)))

    def le(self, x, y) -> bool:
        """Monad-inclusion order: x <= y iff monad(x) is contained in monad(y)."""
        a = self._monad[self._index[x]]
        b = self._monad[self._index[y]]
        return a | b == b

    # -- closure and interior ---------------------------------------------------

    def closure_robinson_mask(self, mask: int) -> int:
        out = 0
        for i in range(self.n):
            if self._monad[i] & mask:
                out |= 1 << i
        return out

    def interior_robinson_mask(self, mask: int) -> int:
        out = 0
        for i in range(self.n):
            if self._monad[i] & mask == self._monad[i]:
                out |= 1 << i
        return out

    def closure_robinson(self, subset: SubsetLike) -> frozenset:
        """Points whose monad meets the set."""
        return self.labels(self.closure_robinson_mask(self.mask(subset)))

    def interior_robinson(self, subset: SubsetLike) -> frozenset:
        """Points whose monad fits inside the set."""
        return self.labels(self.interior_robinson_mask(self.mask(subset)))

    def closure_classical_mask(self, mask: int) -> int:
        out = self.full
        for c in self.closed_sets():
            if c & mask == mask:
                out &= c
        return out

    def interior_classical_mask(self, mask: int) -> int:
        out = 0
        for o in self.opens:
            if o & mask == o:
                out |= o
        return out

    def closure_classical(self, subset: SubsetLike) -> frozenset:
        return self.labels(self.closure_classical_mask(self.mask(subset)))

    def interior_classical(self, subset: SubsetLike) -> frozenset:
        return self.labels(self.interior_classical_mask(self.mask(subset)))

    # -- serialization --------------------------------------------------------

    def opens_as_labels(self) -> list[list]:
        return [self.sorted_labels(o) for o in self.opens]

    def to_json(self) -> dict:
        return {"points": list(self.points), "opens": self.opens_as_labels()}

    def describe(self) -> str:
        opens = ",".join("{" + ",".join(str(x) for x in o) + "}" for o in self.opens_as_labels())
        return f"[{','.join(str(p) for p in self.points)}; {opens}]"


def _check_topology(masks: tuple, full: int) -> tuple:
    seen = set()
    for m in masks:
        if m in seen:
            raise DuplicateOpen(f"open set repeated: {m:b}")
        seen.add(m)
    if 0 not in seen or full not in seen:
        raise MissingEmptyOrFull("the empty set and the full set must both be open")
    for a in masks:
        for b in masks:
            if a >= b:
                continue
            if a | b not in seen:
                raise NotClosedUnderUnion(f"union of {a:b} and {b:b} is not open")
            if a & b not in seen:
                raise NotClosedUnderIntersection(f"intersection of {a:b} and {b:b} is not open")
    return masks


def validate(points: Sequence, opens: Iterable) -> FinSpace:
    """Build a FinSpace from labels and label-sets, enforcing the axioms."""
    pts = tuple(points)
    index = {p: i for i, p in enumerate(pts)}
    masks = []
    for o in opens:
        if isinstance(o, int):
            masks.append(o)
        else:
            m = 0
            for label in o:
                try:
                    m |= 1 << index[label]
                except KeyError:
                    raise SpaceError(f"unknown point {label!r} in an open set") from None
            masks.append(m)
    return FinSpace(pts, masks)


def space_from_json(obj: dict) -> FinSpace:
    if not isinstance(obj, dict) or "points" not in obj or "opens" not in obj:
        raise SpaceError("space JSON needs 'points' and 'opens' keys")
    return validate(obj["points"], obj["opens"])


# -- property verdicts -----------------------------------------------------------


class PropertyVerdict:
    """Monad-based decision next to its classical oracle, with a witness."""

    __slots__ = ("name", "holds", "oracle", "forms", "witness")

    def __init__(self, name: str, holds: bool, oracle: bool, forms: dict, witness):
        self.name = name
        self.holds = holds
        self.oracle = oracle
        self.forms = forms
        self.witness = witness

    @property
    def agree(self) -> bool:
        return self.holds == self.oracle and all(v == self.holds for v in self.forms.values())

    def to_json(self) -> dict:
        out = {
            "property": self.name,
            "holds": self.holds,
            "oracle": self.oracle,
            "agree": self.agree,
        }
        if self.forms:
            out["forms"] = dict(sorted(self.forms.items()))
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def __repr__(self):
        return f"PropertyVerdict({self.name}: holds={self.holds}, oracle={self.oracle})"


def _point_pairs(space: FinSpace):
    for i in range(space.n):
        for j in range(i + 1, space.n):
            yield i, j


def _pair_witness(space: FinSpace, i: int, j: int):
    return [str(space.points[i]), str(space.points[j])]


def _separated_by_disjoint_opens(space: FinSpace, a: int, b: int) -> bool:
    """Disjoint opens around the masks a and b (classical separation)."""
    for g in space.opens:
        if g & a == a:
            for h in space.opens:
                if h & b == b and not g & h:
                    return True
    return False


def is_t0(space: FinSpace) -> PropertyVerdict:
    holds, witness = True, None
    robinson = True
    oracle = True
    for i, j in _point_pairs(space):
        mi, mj = space._monad[i], space._monad[j]
        if mi == mj:
            holds = False
            witness = witness or _pair_witness(space, i, j)
        if (mi >> j & 1) and (mj >> i & 1):
            robinson = False
        some_open = any(bool(o >> i & 1) != bool(o >> j & 1) for o in space.opens)
        if not some_open:
            oracle = False
    return PropertyVerdict("t0", holds, oracle, {"robinson_form": robinson}, witness)


def is_t1(space: FinSpace) -> PropertyVerdict:
    holds, witness = True, None
    robinson = True
    oracle = all(
        space.closure_classical_mask(1 << i) == 1 << i for i in range(space.n)
    )
    for i, j in _point_pairs(space):
        mi, mj = space._monad[i], space._monad[j]
        comparable = (mi | mj == mj) or (mj | mi == mi)
        if comparable:
            holds = False
            witness = witness or _pair_witness(space, i, j)
        if (mj >> i & 1) or (mi >> j & 1):
            robinson = False
    return PropertyVerdict("t1", holds, oracle, {"robinson_form": robinson}, witness)


def is_t2(space: FinSpace) -> PropertyVerdict:
    holds, witness = True, None
    oracle = True
    for i, j in _point_pairs(space):
        if space._monad[i] & space._monad[j]:
            holds = False
            witness = witness or _pair_witness(space, i, j)
        if not _separated_by_disjoint_opens(space, 1 << i, 1 << j):
            oracle = False
    return PropertyVerdict("t2", holds, oracle, {}, witness)


def is_weakly_hausdorff(space: FinSpace) -> PropertyVerdict:
    holds, witness = True, None
    for i, j in _point_pairs(space):
        mi, mj = space._monad[i], space._monad[j]
        if mi != mj and mi & mj:
            holds = False
            witness = witness or _pair_witness(space, i, j)
    # classical reading: inside any open neighbourhood, the centre point is
    # separated from every point outside it
    oracle = True
    for i in range(space.n):
        for g in space.opens:
            if not g >> i & 1:
                continue
            outside = space.full ^ g
            for j in range(space.n):
                if outside >> j & 1 and not _separated_by_disjoint_opens(
                    space, 1 << i, 1 << j
                ):
                    oracle = False
    return PropertyVerdict("weakly_hausdorff", holds, oracle, {}, witness)


def is_regular(space: FinSpace) -> PropertyVerdict:
    holds, witness = True, None
    for i in range(space.n):
        bit = 1 << i
        for f in space.closed_sets():
            if f & bit:
                continue
            if space._monad[i] & space.monad_set_mask(f):
                holds = False
                witness = witness or [str(space.points[i]), space.sorted_labels(f)]
    point_form = True
    for i in range(space.n):
        for j in range(space.n):
            if not space._monad[j] >> i & 1:
                if space._monad[i] & space._monad[j]:
                    point_form = False
    oracle = True
    for i in range(space.n):
        bit = 1 << i
        for f in space.closed_sets():
            if not f & bit and f and not _separated_by_disjoint_opens(space, bit, f):
                oracle = False
    return PropertyVerdict("regular", holds, oracle, {"point_form": point_form}, witness)


def is_normal(space: FinSpace) -> PropertyVerdict:
    holds, witness = True, None
    oracle = True
    closed = space.closed_sets()
    for a in closed:
        for b in closed:
            if a > b or a & b:
                continue
            if space.monad_set_mask(a) & space.monad_set_mask(b):
                holds = False
                witness = witness or [space.sorted_labels(a), space.sorted_labels(b)]
            if a and b and not _separated_by_disjoint_opens(space, a, b):
                oracle = False
    return PropertyVerdict("normal", holds, oracle, {}, witness)


# -- zero-set blocks ---------------------------------------------------------------


class ZBlockPartition:
    """Connected components of the relation "y lies in the monad of x".

    Every continuous rational-valued function is constant on each block, and
    every union of blocks is clopen, hence a zero set; so these blocks carry
    the zero-set monads.
    """

    __slots__ = ("space", "blocks", "block_of")

    def __init__(self, space: FinSpace):
        n = space.n
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)

        for i in range(n):
            m = space._monad[i]
            for j in range(n):
                if m >> j & 1:
                    union(i, j)
        roots = {}
        masks = []
        block_of = []
        for i in range(n):
            r = find(i)
            if r not in roots:
                roots[r] = len(masks)
                masks.append(0)
            k = roots[r]
            masks[k] |= 1 << i
            block_of.append(k)
        self.space = space
        self.blocks = tuple(masks)
        self.block_of = tuple(block_of)

    def block_mask(self, i: int) -> int:
        return self.blocks[self.block_of[i]]

    def mu_z_point(self, i: int) -> int:
        return self.block_mask(i)

    def mu_z_set(self, mask: int) -> int:
        out = 0
        for b in self.blocks:
            if b & mask:
                out |= b
        return out

    def zero_sets(self) -> Iterator[int]:
        """All unions of blocks (each is the zero set of a continuous function)."""
        k = len(self.blocks)
        for choice in range(1 << k):
            m = 0
            for t in range(k):
                if choice >> t & 1:
                    m |= self.blocks[t]
            yield m

    def indicator(self, block_index: int) -> dict:
        """The 0/1 indicator function of one block, as a point -> value map."""
        from fractions import Fraction

        mask = self.blocks[block_index]
        return {
            p: Fraction(1) if mask >> i & 1 else Fraction(0)
            for i, p in enumerate(self.space.points)
        }

    def to_json(self) -> dict:
        return {
            "blocks": [self.space.sorted_labels(b) for b in self.blocks],
        }


def z_partition(space: FinSpace) -> ZBlockPartition:
    return ZBlockPartition(space)


def is_functionally_separated(space: FinSpace) -> PropertyVerdict:
    zp = z_partition(space)
    holds, witness = True, None
    oracle = True
    for i, j in _point_pairs(space):
        if zp.block_of[i] == zp.block_of[j]:
            holds = False
            witness = witness or _pair_witness(space, i, j)
        # oracle: an explicit 0/1 continuous function taking different values
        ind = zp.indicator(zp.block_of[j])
        separated = _is_continuous_value_map(space, ind) and ind[space.points[i]] != ind[
            space.points[j]
        ]
        if not separated:
            oracle = False
    return PropertyVerdict("functionally_separated", holds, oracle, {}, witness)


def is_completely_regular(space: FinSpace) -> PropertyVerdict:
    zp = z_partition(space)
    holds, witness = True, None
    oracle = True
    for i in range(space.n):
        bit = 1 << i
        for f in space.closed_sets():
            if f & bit:
                continue
            if zp.mu_z_point(i) & zp.mu_z_set(f):
                holds = False
                witness = witness or [str(space.points[i]), space.sorted_labels(f)]
            if f:
                ind = zp.indicator(zp.block_of[i])
                ok = (
                    _is_continuous_value_map(space, ind)
                    and ind[space.points[i]] == 1
                    and all(ind[p] == 0 for p in space.sorted_labels(f))
                )
                if not ok:
                    oracle = False
    return PropertyVerdict("completely_regular", holds, oracle, {}, witness)


def is_z_normal(space: FinSpace) -> PropertyVerdict:
    """Normality phrased through zero-set monads; its oracle is plain normality."""
    zp = z_partition(space)
    holds, witness = True, None
    closed = space.closed_sets()
    for a in closed:
        for b in closed:
            if a > b or a & b:
                continue
            if zp.mu_z_set(a) & zp.mu_z_set(b):
                holds = False
                witness = witness or [space.sorted_labels(a), space.sorted_labels(b)]
    oracle = is_normal(space).oracle
    return PropertyVerdict("z_normal", holds, oracle, {}, witness)


def _is_continuous_value_map(space: FinSpace, values: dict) -> bool:
    for i in range(space.n):
        vi = values[space.points[i]]
        m = space._monad[i]
        for j in range(space.n):
            if m >> j & 1 and values[space.points[j]] != vi:
                return False
    return True


# -- soberness -------------------------------------------------------------------


def irreducible_closed_sets(space: FinSpace) -> list[int]:
    """Nonempty closed sets not expressible as a union of two proper closed subsets."""
    closed = space.closed_sets()
    out = []
    for a in closed:
        if a and _is_irreducible_closed(space, a, closed):
            out.append(a)
    return out


def _is_irreducible_closed(space: FinSpace, a: int, closed: list[int]) -> bool:
    if not a:
        return False
    parts = [c for c in closed if c & a == c and c != a]
    for x in parts:
        for y in parts:
            if x | y == a:
                return False
    return True


def is_downward_directed(space: FinSpace, subset: SubsetLike) -> bool:
    """Every two members have a common lower bound inside the set (nonempty)."""
    mask = space.mask(subset)
    if not mask:
        return False
    members = [i for i in range(space.n) if mask >> i & 1]
    for i in members:
        for j in members:
            meet = space._monad[i] & space._monad[j]
            if not any(space._monad[k] | meet == meet for k in members):
                return False
    return True


def _smallest_element(space: FinSpace, mask: int) -> Optional[int]:
    members = [i for i in range(space.n) if mask >> i & 1]
    for i in members:
        if all(space._monad[i] | space._monad[j] == space._monad[j] for j in members):
            return i
    return None


def generic_point_forms(space: FinSpace, a: int, i: int) -> tuple[bool, bool]:
    """(closure form, monad-intersection form) of "x generates A" for x in A."""
    closure_form = space.closure_classical_mask(1 << i) == a
    inter = space.full
    for j in range(space.n):
        if a >> j & 1:
            inter &= space._monad[j]
    monad_form = space._monad[i] == inter
    return closure_form, monad_form


def is_sober(space: FinSpace) -> PropertyVerdict:
    closed = space.closed_sets()
    holds, witness = True, None
    for a in closed:
        if a and is_downward_directed(space, a):
            if _smallest_element(space, a) is None:
                holds = False
                witness = witness or space.sorted_labels(a)
    oracle = True
    for a in irreducible_closed_sets(space):
        if not any(
            space.closure_classical_mask(1 << i) == a
            for i in range(space.n)
            if a >> i & 1
        ):
            oracle = False
            witness = witness or space.sorted_labels(a)
    # the irreducibility and directedness routes must also coincide setwise
    equiv = all(
        _is_irreducible_closed(space, a, closed) == (bool(a) and is_downward_directed(space, a))
        for a in closed
    )
    forms_agree = all(
        generic_point_forms(space, a, i)[0] == generic_point_forms(space, a, i)[1]
        for a in closed
        if a
        for i in range(space.n)
        if a >> i & 1
    )
    return PropertyVerdict(
        "sober",
        holds,
        oracle,
        {"irreducible_iff_directed": equiv, "generic_point_forms_agree": forms_agree},
        witness,
    )


PROPERTY_CHECKS = {
    "t0": is_t0,
    "t1": is_t1,
    "t2": is_t2,
    "weakly_hausdorff": is_weakly_hausdorff,
    "regular": is_regular,
    "normal": is_normal,
    "functionally_separated": is_functionally_separated,
    "completely_regular": is_completely_regular,
    "z_normal": is_z_normal,
    "sober": is_sober,
}


def check_properties(space: FinSpace, names: Optional[Iterable[str]] = None) -> list[PropertyVerdict]:
    names = list(names) if names is not None else list(PROPERTY_CHECKS)
    out = []
    for name in names:
        try:
            out.append(PROPERTY_CHECKS[name](space))
        except KeyError:
            raise SpaceError(f"unknown property {name!r}") from None
    return out


# -- compactness identities -----------------------------------------------------


def compactness_identities(space: FinSpace, sample: int = 256, seed: int = 0) -> dict:
    """Union-of-monads identities satisfied by every subset of a finite space.

    Exhaustive for up to 5 points, seeded sampling above that.  Raises
    AuditFailure if an identity fails (it never should).
    """
    if space.n <= 5:
        masks = list(space.subsets())
    else:
        rng = random.Random(seed)
        masks = sorted({rng.randrange(space.full + 1) for _ in range(sample)} | {0, space.full})
    checked = 0
    for a in masks:
        union = 0
        for i in range(space.n):
            if a >> i & 1:
                union |= space._monad[i]
        mu_a = space.monad_set_mask(a)
        star_inside = a & union == a
        if not (union == mu_a and star_inside):
            raise AuditFailure(
                "compactness identity failed", witness=space.sorted_labels(a)
            )
        checked += 1
    return {"checked_subsets": checked, "failures": []}


# -- enumeration -------------------------------------------------------------------


EXHAUSTIVE_LIMIT = 4


def enumerate_topologies(n: int, points: Optional[Sequence] = None) -> Iterator[FinSpace]:
    """Every labeled topology on n points, exactly once.

    Topologies on a finite set correspond to reflexive transitive relations:
    the relation rows are the monads.  Enumerates relations and keeps the
    transitive ones, so each topology appears exactly once.
    """
    if n < 1:
        raise SpaceError("need at least one point")
    if n > EXHAUSTIVE_LIMIT:
        raise TooLarge(f"exhaustive enumeration is capped at {EXHAUSTIVE_LIMIT} points")
    pts = tuple(points) if points is not None else tuple(str(i) for i in range(n))
    if len(pts) != n:
        raise SpaceError("points list does not match n")
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    for pattern in range(1 << len(offdiag)):
        rows = [1 << i for i in range(n)]
        for b, (i, j) in enumerate(offdiag):
            if pattern >> b & 1:
                rows[i] |= 1 << j
        if not _is_transitive(rows, n):
            continue
        opens = [
            u
            for u in range(1 << n)
            if all(rows[i] | u == u for i in range(n) if u >> i & 1)
        ]
        yield FinSpace(pts, opens, _validated=True)


def _is_transitive(rows: list[int], n: int) -> bool:
    for i in range(n):
        r = rows[i]
        for j in range(n):
            if r >> j & 1 and rows[j] | r != r:
                return False
    return True


def brute_force_topologies(n: int, points: Optional[Sequence] = None) -> Iterator[FinSpace]:
    """Independent oracle: filter every family of subsets by the axioms."""
    if n > 4:
        raise TooLarge("brute force is unreasonable beyond 4 points")
    pts = tuple(points) if points is not None else tuple(str(i) for i in range(n))
    full = (1 << n) - 1
    others = [m for m in range(full + 1) if m not in (0, full)]
    for choice in range(1 << len(others)):
        fam = {0, full}
        for b, m in enumerate(others):
            if choice >> b & 1:
                fam.add(m)
        ok = True
        for a in fam:
            if not ok:
                break
            for b in fam:
                if (a | b) not in fam or (a & b) not in fam:
                    ok = False
                    break
        if ok:
            yield FinSpace(pts, sorted(fam), _validated=True)


# -- continuous maps ------------------------------------------------------------------


def is_continuous(f: dict, src: FinSpace, dst: FinSpace) -> bool:
    """Preimage-of-open-is-open; f maps every source point (else NotTotal)."""
    try:
        images = [dst._index[f[p]] for p in src.points]
    except KeyError as exc:
        raise NotTotal(f"map is not total on the source points: {exc}") from None
    for o in dst.opens:
        pre = 0
        for i, img in enumerate(images):
            if o >> img & 1:
                pre |= 1 << i
        if not src.is_open(pre):
            return False
    return True


def continuous_maps(src: FinSpace, dst: FinSpace) -> Iterator[dict]:
    """All continuous maps, as point -> point dicts, in lexicographic order."""
    import itertools

    for combo in itertools.product(range(dst.n), repeat=src.n):
        f = {src.points[i]: dst.points[combo[i]] for i in range(src.n)}
        if is_continuous(f, src, dst):
            yield f


# -- specialization preorder and DOT export ----------------------------------------


def specialization_pairs(space: FinSpace) -> list[tuple]:
    return [
        (x, y)
        for x in space.points
        for y in space.points
        if x != y and space.le(x, y)
    ]


def dot_specialization(space: FinSpace) -> str:
    """DOT digraph of the monad-inclusion order, transitively reduced.

    Points with equal monads form cycles; distinct monad classes get the
    Hasse edges of the induced order on classes.
    """
    classes: list[list[int]] = []
    index_of = {}
    for i in range(space.n):
        key = space._monad[i]
        if key not in index_of:
            index_of[key] = len(classes)
            classes.append([])
        classes[index_of[key]].append(i)
    keys = list(index_of)

    def class_le(a: int, b: int) -> bool:
        return keys[a] | keys[b] == keys[b]

    k = len(classes)
    hasse = []
    for a in range(k):
        for b in range(k):
            if a == b or not class_le(a, b):
                continue
            if any(
                c not in (a, b) and class_le(a, c) and class_le(c, b) for c in range(k)
            ):
                continue
            hasse.append((a, b))
    lines = ["digraph specialization {"]
    for p in space.points:
        lines.append(f'  "{p}";')
    for cls in classes:
        if len(cls) > 1:
            ring = cls + [cls[0]]
            for u, v in zip(ring, ring[1:]):
                lines.append(f'  "{space.points[u]}" -> "{space.points[v]}";')
    for a, b in sorted(hasse):
        lines.append(f'  "{space.points[classes[a][0]]}" -> "{space.points[classes[b][0]]}";')
    lines.append("}")
    return "\n".join(lines)


# -- theorem audit -----------------------------------------------------------------


def _star_space(space: FinSpace) -> FinSpace:
    """The extension of the space under the star map; identical at finite scale."""
    return FinSpace(space.points, [space.mask(o) for o in space.opens_as_labels()], _validated=True)


def theorem_audit(spaces: Iterable[FinSpace]) -> dict:
    """Implication and identity checks across a set of spaces.

    Every entry is asserted except `finite_star_space_t0`, which is reported
    descriptively: a finite space need not be T0, so candidate counterexamples
    to that reading are listed without failing the audit.
    """
    checks = {
        "t0_and_weakly_hausdorff_implies_hausdorff": [],
        "t0_and_regular_implies_hausdorff": [],
        "hausdorff_implies_regular": [],
        "regular_implies_normal": [],
        "hausdorff_implies_sober": [],
        "star_space_normal_iff_normal": [],
        "star_space_regular_iff_all_opens_clopen": [],
        "irreducible_iff_downward_directed": [],
        "every_finite_space_sober": [],
        "monad_oracle_agreement": [],
    }
    descriptive = {"finite_star_space_t0": []}
    count = 0
    for space in spaces:
        count += 1
        verdicts = {name: PROPERTY_CHECKS[name](space) for name in PROPERTY_CHECKS}
        desc = space.describe()
        for v in verdicts.values():
            if not v.agree:
                checks["monad_oracle_agreement"].append(f"{desc}:{v.name}")
        t0 = verdicts["t0"].holds
        wh = verdicts["weakly_hausdorff"].holds
        t2 = verdicts["t2"].holds
        reg = verdicts["regular"].holds
        nor = verdicts["normal"].holds
        sob = verdicts["sober"].holds
        if t0 and wh and not t2:
            checks["t0_and_weakly_hausdorff_implies_hausdorff"].append(desc)
        if t0 and reg and not t2:
            checks["t0_and_regular_implies_hausdorff"].append(desc)
        if t2 and not reg:
            checks["hausdorff_implies_regular"].append(desc)
        if reg and not nor:
            checks["regular_implies_normal"].append(desc)
        if t2 and not sob:
            checks["hausdorff_implies_sober"].append(desc)
        if not sob:
            checks["every_finite_space_sober"].append(desc)
        star = _star_space(space)
        if is_normal(star).holds != nor:
            checks["star_space_normal_iff_normal"].append(desc)
        clopen = all(space.is_closed(o) for o in space.opens)
        if is_regular(star).holds != clopen:
            checks["star_space_regular_iff_all_opens_clopen"].append(desc)
        closed = space.closed_sets()
        for a in closed:
            if _is_irreducible_closed(space, a, closed) != (
                bool(a) and is_downward_directed(space, a)
            ):
                checks["irreducible_iff_downward_directed"].append(
                    f"{desc}:{space.sorted_labels(a)}"
                )
        if not t0:
            descriptive["finite_star_space_t0"].append(desc)
    report = {
        "spaces_checked": count,
        "asserted": {
            name: {"counterexamples": ces, "passed": not ces} for name, ces in checks.items()
        },
        "descriptive": {
            "finite_star_space_t0": {
                "note": (
                    "a finite space whose star space is T0 must itself be T0; "
                    "the converse reading 'finite implies T0' fails on the spaces below"
                ),
                "counterexample_candidates": descriptive["finite_star_space_t0"],
            }
        },
    }
    report["all_passed"] = all(v["passed"] for v in report["asserted"].values())
    return report

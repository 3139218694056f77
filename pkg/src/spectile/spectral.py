"""Spectral-pair verification and spectrum search in a finite abelian group.

The dual group is identified with the group itself through the coordinatewise
pairing: the character attached to ``h`` evaluates at ``g`` as
``zeta_L ^ (sum_i (L/n_i) h_i g_i)`` with ``L`` the group exponent. A set is
spectral iff it admits as many characters as points whose restrictions to the
set are pairwise orthogonal; orthogonality of two characters reduces to the
vanishing of one exact character sum.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .cyclotomic import CyclotomicSum
from .groups import GroupElement, PointSet

# Above this cardinality a character sum is histogrammed through numpy
# (exact int64; guarded against overflow, with a big-int fallback).
_NUMPY_MIN_POINTS = 512

DEFAULT_SEARCH_NODES = 2_000_000
MAX_SEARCH_ORDER = 4096


def character_pairing(h: GroupElement, g: GroupElement) -> int:
    """Exponent k with chi_h(g) = zeta_L^k, L the ambient exponent."""
    if h.group != g.group:
        raise ValueError("character and argument live in different groups")
    spec = h.group
    return (
        sum(w * a * b for w, a, b in zip(spec._char_weights, h.coords, g.coords))
        % spec.exponent
    )


@lru_cache(maxsize=8)
def _coord_matrix(S: PointSet) -> np.ndarray:
    return np.array([p.coords for p in S.points], dtype=np.int64)


def char_sum_on_set(S: PointSet, h: GroupElement) -> CyclotomicSum:
    """The exact sum of chi_h over S, as a histogram of root exponents."""
    if h.group != S.group:
        raise ValueError("character and set live in different groups")
    spec = S.group
    L = spec.exponent
    wh = tuple(w * c % L for w, c in zip(spec._char_weights, h.coords))
    if len(S) >= _NUMPY_MIN_POINTS and len(wh) * L * L < 2**62:
        exps = _coord_matrix(S) @ np.array(wh, dtype=np.int64)
        counts = np.bincount(exps % L, minlength=L)
        return CyclotomicSum(L, counts.tolist())
    counts = [0] * L
    for p in S.points:
        counts[sum(a * b for a, b in zip(wh, p.coords)) % L] += 1
    return CyclotomicSum(L, counts)


def are_orthogonal(S: PointSet, h1: GroupElement, h2: GroupElement) -> bool:
    """Do the characters of h1 and h2 restrict orthogonally to S?"""
    return char_sum_on_set(S, h1 - h2).is_zero()


@dataclass(frozen=True)
class SpectrumCertificate:
    """A verified spectral pair: every unordered spectrum pair checked."""

    set: PointSet
    spectrum: PointSet
    checked_pairs: int
    ok = True


@dataclass(frozen=True)
class SpectralFailure:
    """Why a candidate pair is not spectral."""

    kind: str  # "cardinality" or "pair"
    detail: str
    pair: tuple[GroupElement, GroupElement] | None = None
    ok = False


def verify_spectral_pair(
    S: PointSet, spectrum: PointSet
) -> SpectrumCertificate | SpectralFailure:
    """Check |spectrum| = |S| and pairwise orthogonality on S, exhaustively."""
    if S.group != spectrum.group:
        raise ValueError("set and spectrum live in different groups")
    if len(S) == 0:
        raise ValueError("empty sets are excluded (counting measure zero)")
    if len(spectrum) != len(S):
        return SpectralFailure(
            kind="cardinality",
            detail=f"|S|={len(S)} but |spectrum|={len(spectrum)}",
        )
    checked = 0
    for h1, h2 in combinations(spectrum.points, 2):
        if not are_orthogonal(S, h1, h2):
            return SpectralFailure(
                kind="pair",
                detail=f"characters {h1!r} and {h2!r} are not orthogonal on S",
                pair=(h1, h2),
            )
        checked += 1
    return SpectrumCertificate(set=S, spectrum=spectrum, checked_pairs=checked)


@dataclass(frozen=True)
class SpectrumSearch:
    """Outcome of a spectrum search: found / exhausted / budget."""

    status: str
    certificate: SpectrumCertificate | None
    nodes: int
    detail: str = ""


class _BudgetHit(Exception):
    pass


def _greedy_color_bound(P: int, order: list[int], adj: list[int]) -> int:
    """Number of greedy color classes of the candidate mask P (clique bound)."""
    classes: list[int] = []
    for v in order:
        if not (P >> v) & 1:
            continue
        av = adj[v]
        for i, cmask in enumerate(classes):
            if not (av & cmask):
                classes[i] = cmask | (1 << v)
                break
        else:
            classes.append(1 << v)
    return len(classes)


def _clique_search(
    adj: list[int],
    nverts: int,
    target: int,
    budget: int,
    canonical: bool,
) -> tuple[str, list[int] | None, int]:
    """First clique of size ``target`` containing vertex 0, or exhaustion.

    Default order: descending degree with a greedy-coloring bound (branch and
    bound). Canonical order: ascending vertex index, so the first clique found
    is the lexicographically least one; pruning only removes subtrees that
    cannot hold any clique of the needed size.
    """
    nodes = 0
    if canonical:
        order = list(range(nverts))
    else:
        order = sorted(range(nverts), key=lambda v: (-adj[v].bit_count(), v))
    found: list[int] | None = None

    def expand(R: list[int], P: int) -> bool:
        nonlocal nodes, found
        nodes += 1
        if nodes > budget:
            raise _BudgetHit
        if len(R) == target:
            found = list(R)
            return True
        if not P:
            return False
        need = target - len(R)
        if P.bit_count() < need:
            return False
        if canonical:
            if _greedy_color_bound(P, order, adj) < need:
                return False
            Q = P
            while Q:
                v = (Q & -Q).bit_length() - 1
                Q &= Q - 1
                if Q.bit_count() + 1 < need:  # too few candidates remain
                    return False
                R.append(v)
                if expand(R, P & adj[v] & ~((1 << (v + 1)) - 1)):
                    return True
                R.pop()
            return False
        # Tomita-style: color candidates in static order, branch from the
        # highest color down, prune once the bound cannot reach the target.
        classes: list[int] = []
        colored: list[tuple[int, int]] = []
        for v in order:
            if not (P >> v) & 1:
                continue
            av = adj[v]
            for ci, cmask in enumerate(classes):
                if not (av & cmask):
                    classes[ci] = cmask | (1 << v)
                    colored.append((v, ci + 1))
                    break
            else:
                classes.append(1 << v)
                colored.append((v, len(classes)))
        local = P
        for v, color in sorted(colored, key=lambda t: -t[1]):
            if len(R) + color < target:
                return False
            R.append(v)
            if expand(R, local & adj[v]):
                return True
            R.pop()
            local &= ~(1 << v)
        return False

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, nverts + 1000))
    try:
        ok = expand([0], adj[0])
    except _BudgetHit:
        return "budget", None, nodes
    finally:
        sys.setrecursionlimit(old_limit)
    return ("found", found, nodes) if ok else ("exhausted", None, nodes)


def find_spectrum(
    S: PointSet,
    budget: int = DEFAULT_SEARCH_NODES,
    canonical: bool = False,
) -> SpectrumSearch:
    """Search for a spectrum of S, or prove by exhaustion that none exists.

    Spectra are translation-invariant, so the search may fix 0 in the
    candidate spectrum; the orthogonality graph restricted to the neighbors of
    0 is then scanned for a clique of size |S| - 1. A returned certificate is
    always re-verified from scratch. ``exhausted`` is only reported when the
    full branch-and-bound tree was traversed; running out of nodes is the
    distinct ``budget`` outcome.
    """
    spec = S.group
    k = len(S)
    if k == 0:
        raise ValueError("empty sets are excluded (counting measure zero)")
    if spec.order > MAX_SEARCH_ORDER:
        return SpectrumSearch(
            status="budget",
            certificate=None,
            nodes=0,
            detail=f"ambient order {spec.order} exceeds search cap {MAX_SEARCH_ORDER}",
        )

    # Orthogonality to 0 depends only on the difference, so the candidate
    # vertices are exactly the nonzero elements whose character sum vanishes.
    zero_diffs = [
        r
        for r in range(1, spec.order)
        if char_sum_on_set(S, spec.element_at(r)).is_zero()
    ]
    rank_list = [0] + zero_diffs  # vertex i <-> group rank rank_list[i]
    if len(rank_list) < k:
        return SpectrumSearch(status="exhausted", certificate=None, nodes=1)

    elems = [spec.element_at(r) for r in rank_list]
    zset = set(zero_diffs)
    n = len(rank_list)
    adj = [0] * n
    for i in range(n):
        ei = elems[i]
        for j in range(i + 1, n):
            if (elems[j] - ei).rank() in zset:
                adj[i] |= 1 << j
                adj[j] |= 1 << i

    status, clique, nodes = _clique_search(adj, n, k, budget, canonical)
    if status != "found":
        return SpectrumSearch(status=status, certificate=None, nodes=nodes)
    spectrum = PointSet(spec, [elems[i] for i in clique])
    cert = verify_spectral_pair(S, spectrum)
    if not isinstance(cert, SpectrumCertificate):
        raise RuntimeError(f"search produced a spectrum that fails re-verification: {cert}")
    return SpectrumSearch(status="found", certificate=cert, nodes=nodes)

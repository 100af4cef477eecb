"""Path-algebra elements and graded quotients by homogeneous ideals.

The quotient engine works degree by degree.  If Q(d-1) is the quotient in
degree d-1 with a chosen basis of standard paths, then every degree-d path
reduces (modulo arrow * ideal) to a combination of candidates
arrow * standard.  The only relations that remain to be imposed on the
candidate space are the right multiples of the generators, themselves
propagated degree by degree in candidate coordinates.  All eliminations
therefore happen in spaces of size (number of arrows) x dim Q(d-1),
split further into independent (source, target) blocks.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import NamedTuple

from .cyclotomic import CyclotomicContext, Scalar, make_context
from .quiver import Quiver


class Path(NamedTuple):
    """A path is its target vertex plus the label word, last arrow first."""

    target: int
    word: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.word)


def path_key(p: Path):
    # lexicographic on the label word, ties broken by target encoding
    return (p.word, p.target)


def path_label(q: Quiver, p: Path) -> str:
    if not p.word:
        return q.vertex_name(p.target)
    dirs = ",".join(str(i + 1) for i in p.word)
    return f"A({q.vertex_name(p.target)}; {dirs})"


def _acc(d: dict, key, value) -> None:
    cur = d.get(key)
    if cur is None:
        if not value.is_zero():
            d[key] = value
    else:
        cur = cur + value
        if cur.is_zero():
            del d[key]
        else:
            d[key] = cur


class AlgebraElement:
    """Finitely supported scalar combination of paths of one quiver."""

    __slots__ = ("quiver", "ctx", "terms")

    def __init__(self, quiver: Quiver, ctx: CyclotomicContext, terms: dict[Path, Scalar] | None = None):
        self.quiver = quiver
        self.ctx = ctx
        self.terms = {p: c for p, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def zero(cls, quiver, ctx):
        return cls(quiver, ctx)

    @classmethod
    def path_mass(cls, quiver, ctx, path: Path, coeff: Scalar | None = None):
        quiver.path_source(path.target, path.word)  # validates the word
        return cls(quiver, ctx, {path: coeff if coeff is not None else ctx.one})

    @classmethod
    def vertex_mass(cls, quiver, ctx, v: int):
        return cls(quiver, ctx, {Path(v, ()): ctx.one})

    @classmethod
    def unit(cls, quiver, ctx):
        return cls(quiver, ctx, {Path(v, ()): ctx.one for v in range(quiver.num_vertices)})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {p.degree for p in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            _acc(out, p, c)
        return AlgebraElement(self.quiver, self.ctx, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgebraElement(self.quiver, self.ctx, {p: -c for p, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        self._check(other)
        out: dict[Path, Scalar] = {}
        src_cache: dict[Path, int] = {}
        for p, c in self.terms.items():
            src = src_cache.get(p)
            if src is None:
                src = self.quiver.path_source(p.target, p.word)
                src_cache[p] = src
            for p2, c2 in other.terms.items():
                if p2.target == src:
                    _acc(out, Path(p.target, p.word + p2.word), c * c2)
        return AlgebraElement(self.quiver, self.ctx, out)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "AlgebraElement":
        c = self.ctx.scalar(c)
        if c.is_zero():
            return AlgebraElement.zero(self.quiver, self.ctx)
        return AlgebraElement(self.quiver, self.ctx, {p: c * v for p, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("no inverses in the path algebra")
        out = AlgebraElement.unit(self.quiver, self.ctx)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.quiver is other.quiver and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.quiver is not self.quiver:
            raise ValueError("elements must live on the same quiver")

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for p in sorted(self.terms, key=path_key):
            bits.append(f"({self.terms[p]!r})*{path_label(self.quiver, p)}")
        return " + ".join(bits)


def ideal_generators(q: Quiver, ctx: CyclotomicContext) -> list[AlgebraElement]:
    """Defining relations of the admissible quotient on a Cayley quiver:
    directional paths of length e, commuting squares for orthogonal
    direction pairs, and the cubic relation for adjacent direction pairs."""
    if q.cayley is None:
        raise ValueError("ideal_generators needs a Cayley quiver")
    C = q.cayley.C
    t = C.t
    e = ctx.e
    serre = ctx.serre_coefficient()
    one = ctx.one
    gens: list[AlgebraElement] = []
    for v in range(q.num_vertices):
        for i in range(t):
            gens.append(AlgebraElement(q, ctx, {Path(v, (i,) * e): one}))
        for i in range(t):
            for j in range(i + 1, t):
                if C[i, j] == 0:
                    gens.append(
                        AlgebraElement(q, ctx, {Path(v, (i, j)): one, Path(v, (j, i)): -one})
                    )
        for i in range(t):
            for j in range(t):
                if i != j and C[i, j] == -1:
                    gens.append(
                        AlgebraElement(
                            q,
                            ctx,
                            {
                                Path(v, (i, i, j)): one,
                                Path(v, (i, j, i)): -serre,
                                Path(v, (j, i, i)): one,
                            },
                        )
                    )
    return gens


def composite_power_relations(q: Quiver, ctx: CyclotomicContext) -> list[AlgebraElement]:
    """Power relations of the composite direction elements.

    For every adjacent direction pair (i, j) the quotient by directional
    e-th powers, commuting squares and the cubic relations alone is still
    infinite dimensional: the composite element
    x_c = mass(c; i, j) - q^{-1} mass(c; j, i) q-commutes with both
    directions, so its e-th power generates a new central-like tail that is
    not in the ideal (the graded dimensions plateau from degree 2e).  The
    finite-dimensional algebra needs the per-vertex generators
    x_c * x_{c-s} * ... over e factors (s the combined column shift).

    This pairwise completion is exactly sufficient when every positive
    root has height at most two (t = 1, products of A1, and A2 blocks).
    """
    if q.cayley is None:
        raise ValueError("composite_power_relations needs a Cayley quiver")
    C = q.cayley.C
    t, e = C.t, ctx.e
    coeff = ctx.q_power(-1)
    out: list[AlgebraElement] = []
    for v in range(q.num_vertices):
        for i in range(t):
            for j in range(i + 1, t):
                if C[i, j] != -1:
                    continue
                prod = AlgebraElement.unit(q, ctx)
                cur = v
                for _ in range(e):
                    x = AlgebraElement(
                        q, ctx, {Path(cur, (i, j)): ctx.one, Path(cur, (j, i)): -coeff}
                    )
                    prod = prod * x
                    cur = q.cayley.encode(
                        [
                            a - b1 - b2
                            for a, b1, b2 in zip(
                                q.cayley.decode(cur), C.column(i), C.column(j)
                            )
                        ]
                    )
                out.append(prod)
    return out


def _row_eliminate(row: dict, pivot: Path, pivot_row: dict) -> None:
    """row -= row[pivot] * pivot_row, in place; drops the pivot column."""
    c = row.pop(pivot)
    for p2, c2 in pivot_row.items():
        if p2 == pivot:
            continue
        _acc(row, p2, -(c * c2))


def _echelonize_block(rows: list[dict], ctx) -> dict[Path, dict]:
    """Reduced echelon basis; each row's pivot is its lex-largest path."""
    pivots: dict[Path, dict] = {}
    for row in rows:
        row = dict(row)
        while row:
            m = max(row, key=path_key)
            if m not in pivots:
                break
            _row_eliminate(row, m, pivots[m])
        if not row:
            continue
        m = max(row, key=path_key)
        inv = row[m].inverse()
        row = {p: c * inv for p, c in row.items()}
        for p in [p for p in row if p != m and p in pivots]:
            _row_eliminate(row, p, pivots[p])
        for prow in pivots.values():
            if m in prow:
                _row_eliminate(prow, m, row)
        pivots[m] = row
    return pivots


def _worker_echelonize(args):
    block_key, raw_rows, ctx_params = args
    ctx = make_context(**ctx_params)
    rows = [{p: Scalar(ctx, rep) for p, rep in row} for row in raw_rows]
    pivots = _echelonize_block(rows, ctx)
    out = {
        piv: tuple((p, c.rep) for p, c in sorted(prow.items(), key=lambda kv: path_key(kv[0])))
        for piv, prow in pivots.items()
    }
    return block_key, out


def _ctx_params(ctx) -> dict:
    params = {"n": ctx.n, "backend": ctx.backend}
    if ctx.backend == "modular":
        params["prime_floor"] = ctx.prime_floor
    return params


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("QUIVERHOPF_WORKERS", "1")))
    except ValueError:
        return 1


_SAFETY_DEGREE_CAP = 10_000


class GradedQuotient:
    """Degreewise basis and normal forms of a path algebra modulo a
    homogeneous two-sided ideal with fixed-endpoint generators."""

    def __init__(
        self,
        quiver: Quiver,
        generators: list[AlgebraElement],
        ctx: CyclotomicContext,
        *,
        max_degree: int | None = None,
        block_budget: int = 200_000,
        workers: int | None = None,
    ):
        self.quiver = quiver
        self.ctx = ctx
        self.generators = list(generators)
        self.max_degree = max_degree
        self.block_budget = block_budget
        self.workers = workers if workers is not None else default_workers()
        self._gens_by_degree: dict[int, list[AlgebraElement]] = {}
        for g in self.generators:
            self._validate_generator(g)
            self._gens_by_degree.setdefault(g.degree(), []).append(g)
        self.dims: list[int] = []
        self.std_paths: list[list[Path]] = []
        self._cand_red: list[dict[Path, dict[Path, Scalar]]] = []
        self.terminated = False
        self._nf_cache: dict[Path, dict[Path, Scalar]] = {}
        self._build()

    def _validate_generator(self, g: AlgebraElement) -> None:
        if g.is_zero():
            raise ValueError("zero ideal generator")
        if not g.is_homogeneous() or g.degree() < 1:
            raise ValueError("ideal generators must be homogeneous of positive degree")
        blocks = {
            (self.quiver.path_source(p.target, p.word), p.target) for p in g.terms
        }
        if len(blocks) != 1:
            raise ValueError("each generator must have a single (source, target) block")

    def _block_of_path(self, p: Path) -> tuple[int, int]:
        return (self.quiver.path_source(p.target, p.word), p.target)

    def _build(self) -> None:
        q = self.quiver
        std0 = sorted((Path(v, ()) for v in range(q.num_vertices)), key=path_key)
        self.std_paths.append(std0)
        self.dims.append(len(std0))
        self._cand_red.append({p: {p: self.ctx.one} for p in std0})
        rows_prev: list[tuple[tuple[int, int], dict[Path, Scalar]]] = []
        src_of_std = {p: p.target for p in std0}
        d = 1
        while True:
            if self.max_degree is not None and d > self.max_degree:
                self.terminated = False
                return
            cands_by_block: dict[tuple[int, int], list[Path]] = {}
            cand_src: dict[Path, int] = {}
            for s in self.std_paths[d - 1]:
                sigma = src_of_std[s]
                for a in q.out_arrows[s.target]:
                    cand = Path(a.target, (a.label,) + s.word)
                    cands_by_block.setdefault((sigma, a.target), []).append(cand)
                    cand_src[cand] = sigma
            if not cands_by_block:
                self._finish_degree(d, [], {})
                return
            for bk, cs in cands_by_block.items():
                if len(cs) > self.block_budget:
                    raise RuntimeError(
                        f"block {bk} at degree {d} has {len(cs)} paths, budget {self.block_budget}"
                    )
            rows_by_block: dict[tuple[int, int], list[dict[Path, Scalar]]] = {}
            for (sigma, tau), row in rows_prev:
                for j in q.in_arrows[sigma]:
                    new_row: dict[Path, Scalar] = {}
                    for cpath, coeff in row.items():
                        lab = cpath.word[0]
                        arrow = q.arrow_into(cpath.target, lab)
                        tail = Path(arrow.source, cpath.word[1:])
                        sj = Path(tail.target, tail.word + (j.label,))
                        for s2, c2 in self._nf_path(sj).items():
                            _acc(new_row, Path(cpath.target, (lab,) + s2.word), coeff * c2)
                    if new_row:
                        rows_by_block.setdefault((j.source, tau), []).append(new_row)
            for g in self._gens_by_degree.get(d, []):
                row: dict[Path, Scalar] = {}
                block = None
                for p, coeff in g.terms.items():
                    lab = p.word[0]
                    arrow = q.arrow_into(p.target, lab)
                    tail = Path(arrow.source, p.word[1:])
                    block = self._block_of_path(p)
                    for s2, c2 in self._nf_path(tail).items():
                        _acc(row, Path(p.target, (lab,) + s2.word), coeff * c2)
                if row:
                    rows_by_block.setdefault(block, []).append(row)
            pivots_by_block = self._echelonize_blocks(rows_by_block)
            std_d: list[Path] = []
            cr: dict[Path, dict[Path, Scalar]] = {}
            rows_prev = []
            for bk in sorted(cands_by_block):
                pivots = pivots_by_block.get(bk, {})
                for cand in cands_by_block[bk]:
                    prow = pivots.get(cand)
                    if prow is None:
                        std_d.append(cand)
                        cr[cand] = {cand: self.ctx.one}
                    else:
                        cr[cand] = {p: -c for p, c in prow.items() if p != cand}
                for piv in sorted(pivots, key=path_key):
                    rows_prev.append((bk, pivots[piv]))
            std_d.sort(key=path_key)
            done = self._finish_degree(d, std_d, cr)
            if done:
                return
            src_of_std = {p: cand_src[p] for p in std_d}
            if self.max_degree is None and d > _SAFETY_DEGREE_CAP:
                raise RuntimeError(
                    "no zero-dimensional degree reached by the safety cap; "
                    "pass max_degree for non-nilpotent presentations"
                )
            d += 1

    def _finish_degree(self, d, std_d, cr) -> bool:
        self.std_paths.append(std_d)
        self.dims.append(len(std_d))
        self._cand_red.append(cr)
        if not std_d:
            self.terminated = True
            return True
        return False

    def _echelonize_blocks(self, rows_by_block):
        keys = sorted(rows_by_block)
        if self.workers > 1 and len(keys) > 1:
            params = _ctx_params(self.ctx)
            tasks = [
                (
                    bk,
                    [
                        tuple((p, c.rep) for p, c in sorted(row.items(), key=lambda kv: path_key(kv[0])))
                        for row in rows_by_block[bk]
                    ],
                    params,
                )
                for bk in keys
            ]
            out = {}
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                for bk, raw in pool.map(_worker_echelonize, tasks):
                    out[bk] = {
                        piv: {p: Scalar(self.ctx, rep) for p, rep in prow}
                        for piv, prow in raw.items()
                    }
            return out
        return {bk: _echelonize_block(rows_by_block[bk], self.ctx) for bk in keys}

    # ---- queries ----------------------------------------------------

    def dimension(self, d: int) -> int:
        if d < len(self.dims):
            return self.dims[d]
        if self.terminated:
            return 0
        raise ValueError(f"degree {d} beyond the truncation of this quotient")

    def graded_dimensions(self) -> list[int]:
        return list(self.dims)

    def nonzero_graded_dimensions(self) -> list[int]:
        out = list(self.dims)
        while out and out[-1] == 0:
            out.pop()
        return out

    def total_dimension(self, allow_partial: bool = False) -> int:
        if not self.terminated and not allow_partial:
            raise ValueError("quotient was truncated before reaching a zero degree")
        return sum(self.dims)

    def nilpotency_degree(self) -> int:
        """First degree with zero dimension (arrow ideal power vanishing there)."""
        if not self.terminated:
            raise ValueError("quotient was truncated; nilpotency not observed")
        return len(self.dims) - 1

    def _nf_path(self, path: Path) -> dict[Path, Scalar]:
        d = len(path.word)
        if d == 0:
            return {path: self.ctx.one}
        cached = self._nf_cache.get(path)
        if cached is not None:
            return cached
        if d >= len(self.dims):
            if self.terminated:
                return {}
            raise ValueError("path degree exceeds the built truncation")
        lab = path.word[0]
        arrow = self.quiver.arrow_into(path.target, lab)
        tail = Path(arrow.source, path.word[1:])
        out: dict[Path, Scalar] = {}
        cr = self._cand_red[d]
        for s, c in self._nf_path(tail).items():
            red = cr[Path(path.target, (lab,) + s.word)]
            for p2, c2 in red.items():
                _acc(out, p2, c * c2)
        self._nf_cache[path] = out
        return out

    def normal_form(self, elem: AlgebraElement) -> AlgebraElement:
        out: dict[Path, Scalar] = {}
        for p, c in elem.terms.items():
            for p2, c2 in self._nf_path(p).items():
                _acc(out, p2, c * c2)
        return AlgebraElement(self.quiver, self.ctx, out)

    def reduces_to_zero(self, elem: AlgebraElement) -> bool:
        return self.normal_form(elem).is_zero()

    def radical_layer_dimension(self, u: int, v: int) -> int:
        """Dimension of the (u, v) block of rad/rad^2; equals the number of
        surviving degree-one paths from u to v."""
        count = 0
        for p in self.std_paths[1] if len(self.std_paths) > 1 else []:
            if p.target != v:
                continue
            if self.quiver.arrow_into(p.target, p.word[0]).source == u:
                count += 1
        return count

    def block_dimensions(self, d: int) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        if d >= len(self.std_paths):
            return out
        for p in self.std_paths[d]:
            out[self._block_of_path(p)] = out.get(self._block_of_path(p), 0) + 1
        return out


def cayley_quotient(
    q: Quiver,
    ctx: CyclotomicContext,
    *,
    block_budget: int = 200_000,
    workers: int | None = None,
) -> GradedQuotient:
    """Quotient of a Cayley path algebra by its defining relations (the
    three cited families plus the pairwise composite-power completion),
    with the degree cap taken one past the monomial-basis bound so the
    terminating zero dimension is itself computed rather than assumed."""
    from .cartan import positive_roots

    if q.cayley is None:
        raise ValueError("cayley_quotient needs a Cayley quiver")
    C = q.cayley.C
    if not C.is_ade():
        raise ValueError("cayley_quotient needs a positive definite Cartan matrix")
    roots = positive_roots(C)
    if max(sum(r) for r in roots) > 2:
        raise ValueError(
            "quotient build supports blocks of rank at most two (root heights <= 2); "
            "higher-rank instances need root vectors beyond the pairwise completion"
        )
    gens = ideal_generators(q, ctx) + composite_power_relations(q, ctx)
    cap = (ctx.e - 1) * sum(sum(r) for r in roots) + 1
    quo = GradedQuotient(q, gens, ctx, max_degree=cap, block_budget=block_budget, workers=workers)
    if not quo.terminated:
        raise RuntimeError("quotient failed to vanish by its dimension bound")
    return quo


def presentation_quotient(
    q: Quiver,
    relations: list[AlgebraElement],
    ctx: CyclotomicContext,
    *,
    max_degree: int | None = None,
    block_budget: int = 200_000,
    workers: int | None = None,
) -> GradedQuotient:
    """Same engine applied to an arbitrary finite quiver presentation with
    homogeneous relations (loops allowed)."""
    return GradedQuotient(
        q, relations, ctx, max_degree=max_degree, block_budget=block_budget, workers=workers
    )

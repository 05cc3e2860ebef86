"""The three nested algebras of a strongly regular graph at a base vertex.

For a base vertex ω the vertex set splits into {ω}, neighbours, and
non-neighbours, with diagonal idempotents E*₀, E*₁, E*₂.  Three algebras
nest:

  T₀, the span of the 27 sandwich products E*ᵢ A_j E*ₖ;
  T, the algebra generated by A₀, A₁, A₂ and the idempotents;
  T̃, the centralizer of the vertex stabilizer Aut(Γ)_ω.

Dimensions and 3×3 block decompositions of all three are computed exactly:
T₀ and T by echelon span / algebra closure over two prime fields, T̃ by
counting stabilizer orbitals.  A floating-point cross-check of dim T from
subconstituent spectra is provided as an advisory, never a verdict source.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .exactmath import DEFAULT_PRIMES, check_guard, srg_eigenvalues
from .graphcore import (
    Graph,
    ImprimitiveParams,
    SrgParams,
    VertexPartition,
    is_primitive,
    require_srg,
    subconstituents,
)
from .linalg import (
    PrimeDisagreement,
    SubspaceBasis,
    algebra_closure,
    block_dims,
    closure_product_selftest,
)
from .permgroup import (
    GroupBSGS,
    orbit_count,
    orbital_count_block,
    orbits,
    point_stabilizer,
    schreier_sims,
    transitivity_rank,
    two_point_stabilizer,
)

_CLOSURE_GUARD = 1500


class OracleMismatch(RuntimeError):
    """Span dimension disagrees with the intersection-number count."""


class InternalDisagreement(RuntimeError):
    """Two independent computations of dim T̃ differ."""


class NotTransitive(RuntimeError):
    pass


class _Inconclusive:
    """Sentinel for a spectral cross-check with ambiguous clustering."""

    def __repr__(self):
        return "Inconclusive"

    def __bool__(self):
        return False


Inconclusive = _Inconclusive()


@dataclass(frozen=True)
class Idempotents:
    part: VertexPartition
    masks: tuple[np.ndarray, np.ndarray, np.ndarray]

    @property
    def traces(self) -> tuple[int, int, int]:
        return tuple(int(m.sum()) for m in self.masks)


def idempotents(g: Graph, omega: int = 0) -> Idempotents:
    require_srg(g)
    _, _, part = subconstituents(g, omega)
    masks = []
    for cell in part.cells:
        m = np.zeros(g.n, dtype=np.int64)
        m[list(cell)] = 1
        masks.append(m)
    return Idempotents(part, tuple(masks))


def _relation_matrices(g: Graph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n = g.n
    a0 = np.eye(n, dtype=np.int64)
    a1 = g.adjacency_dense().astype(np.int64)
    a2 = np.ones((n, n), dtype=np.int64) - a0 - a1
    return a0, a1, a2


def _primes_for(rational: bool, primes) -> tuple:
    return (None,) if rational else tuple(primes)


def t0_report(
    g: Graph, omega: int = 0, primes=DEFAULT_PRIMES, rational: bool = False
) -> tuple[int, np.ndarray]:
    """dim and 3×3 block dimensions of the span of the E*ᵢ A_j E*ₖ.

    Cross-validated against the closed-form intersection numbers: the span
    dimension must equal the count of nonzero pᵢⱼᵏ.
    """
    params = require_srg(g)
    idem = idempotents(g, omega)
    rels = _relation_matrices(g)
    results = []
    for p in _primes_for(rational, primes):
        basis = SubspaceBasis(p, g.n * g.n)
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    sandwich = rels[j] * np.outer(idem.masks[i], idem.masks[k])
                    basis.insert(sandwich.reshape(-1))
        results.append((basis.dim, block_dims(basis, idem.masks)))
    _agree(results, "T0")
    dim, blocks = results[0]
    from .classifier import intersection_numbers

    expected = int(np.count_nonzero(intersection_numbers(params)))
    if dim != expected:
        raise OracleMismatch(
            f"span dim {dim} != nonzero intersection-number count {expected}"
        )
    return dim, blocks


def t_report(
    g: Graph, omega: int = 0, primes=DEFAULT_PRIMES, rational: bool = False
) -> tuple[int, np.ndarray]:
    """dim and block dimensions of the full algebra via closure."""
    require_srg(g)
    check_guard(g.n, _CLOSURE_GUARD, "algebra closure order")
    idem = idempotents(g, omega)
    _, a1, a2 = _relation_matrices(g)
    gens = [a1, a2] + [np.diag(m) for m in idem.masks]
    results = []
    for p in _primes_for(rational, primes):
        basis, mats = algebra_closure(gens, g.n, p)
        if p == _primes_for(rational, primes)[0]:
            closure_product_selftest(basis, mats, p)
        results.append((basis.dim, block_dims(basis, idem.masks)))
    _agree(results, "T")
    return results[0]


def _agree(results, label: str) -> None:
    dims = {r[0] for r in results}
    if len(dims) != 1:
        raise PrimeDisagreement(f"{label} dimension differs across primes: {dims}")
    first = results[0][1]
    for _, blocks in results[1:]:
        if not np.array_equal(first, blocks):
            raise PrimeDisagreement(f"{label} block dimensions differ across primes")


def t_tilde_report(
    g: Graph, gens, omega: int = 0, require_transitive: bool = False,
    group: GroupBSGS | None = None,
) -> tuple[int, np.ndarray]:
    """dim and block dimensions of the stabilizer centralizer algebra.

    The dimension is the orbital count of G_ω, computed two independent
    ways: nine per-block orbit counts on Δᵢ×Δⱼ, and a sum over G_ω-orbit
    representatives x of the orbit count of the two-point stabilizer
    G_ω ∩ G_x.  Disagreement raises InternalDisagreement.
    """
    require_srg(g)
    idem = idempotents(g, omega)
    cells = idem.part.cells
    if group is None:
        group = schreier_sims(gens, n=g.n)
    transitive, _ = transitivity_rank(group, g.n)
    if require_transitive and not transitive:
        raise NotTransitive("generators are not vertex-transitive")
    stab = point_stabilizer(group, omega)
    blocks = np.zeros((3, 3), dtype=np.int64)
    for i in range(3):
        for j in range(3):
            blocks[i, j] = orbital_count_block(stab, cells[i], cells[j])
    total = int(blocks.sum())

    stab_sum = 0
    for orb in orbits(stab, g.n) if stab else [[x] for x in range(g.n)]:
        x = min(orb)
        if x == omega:
            stab_sum += orbit_count(stab, g.n)
        else:
            two = two_point_stabilizer(group, omega, x)
            stab_sum += orbit_count(two, g.n)
    if stab_sum != total:
        raise InternalDisagreement(
            f"orbital blocks give {total}, stabilizer-sum gives {stab_sum}"
        )
    return total, blocks


def t_dim_spectral_crosscheck(g: Graph, omega: int = 0):
    """Advisory dim T from subconstituent spectra, or Inconclusive.

    Counts, for each subconstituent, its distinct eigenvalues on the space
    orthogonal to all-ones (one copy of the valency drops out), split by
    membership in {θ, τ}; the result is m₁+m₂+4n₁+9.  Floating point with
    1e-8 clustering; any inter-cluster gap under 1e-6 is Inconclusive.
    """
    params = require_srg(g)
    if not is_primitive(params):
        raise ImprimitiveParams("spectral cross-check needs primitive parameters")
    theta, tau = srg_eigenvalues(*params.astuple())
    special = (float(theta), float(tau))
    g1, g2, _ = subconstituents(g, omega)
    valencies = (params.lam, params.k - params.mu)
    m_counts, n_counts = [], []
    for sub, valency in zip((g1, g2), valencies):
        evs = np.linalg.eigvalsh(sub.adjacency_dense().astype(np.float64))
        clusters: list[list[float]] = []
        for e in np.sort(evs):
            if clusters and e - clusters[-1][-1] < 1e-8:
                clusters[-1].append(float(e))
            else:
                clusters.append([float(e)])
        reps = [float(np.mean(c)) for c in clusters]
        mults = [len(c) for c in clusters]
        for a, b in zip(reps, reps[1:]):
            if b - a < 1e-6:
                return Inconclusive
        vi = min(range(len(reps)), key=lambda i: abs(reps[i] - valency))
        if abs(reps[vi] - valency) > 1e-8:
            return Inconclusive
        mults[vi] -= 1
        m = sum(
            1
            for r, c in zip(reps, mults)
            if c > 0 and any(abs(r - s) <= 1e-8 for s in special)
        )
        nn = sum(
            1
            for r, c in zip(reps, mults)
            if c > 0 and all(abs(r - s) > 1e-8 for s in special)
        )
        m_counts.append(m)
        n_counts.append(nn)
    if n_counts[0] != n_counts[1]:
        return Inconclusive
    return m_counts[0] + m_counts[1] + 4 * n_counts[0] + 9


@dataclass
class AlgebraReport:
    """Full per-vertex analysis: dimensions, blocks, verdicts, group data."""

    params: SrgParams
    omega: int
    dims: dict
    blocks: dict
    verdicts: dict
    aut_order: int
    flags: list[str] = field(default_factory=list)

    def __post_init__(self):
        t0, t, tt = self.dims["t0"], self.dims["t"], self.dims["t_tilde"]
        if not (t0 <= t <= tt):
            raise InternalDisagreement(f"dimension chain violated: {t0}, {t}, {tt}")
        for name, dim in self.dims.items():
            if int(np.sum(self.blocks[name])) != dim:
                raise InternalDisagreement(f"{name} blocks do not sum to its dim")

    @property
    def r1(self) -> int:
        return int(self.blocks["t_tilde"][1][1])

    @property
    def r2(self) -> int:
        return int(self.blocks["t_tilde"][2][2])

    @property
    def t_offdiag(self) -> int:
        return int(self.blocks["t_tilde"][1][2])

    def to_json(self) -> str:
        payload = {
            "params": list(self.params.astuple()),
            "omega": self.omega,
            "dims": dict(self.dims),
            "blocks": {k: [list(map(int, row)) for row in v] for k, v in self.blocks.items()},
            "verdicts": dict(self.verdicts),
            "aut_order": self.aut_order,
            "flags": list(self.flags),
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "AlgebraReport":
        d = json.loads(text)
        return AlgebraReport(
            params=SrgParams(*d["params"]),
            omega=d["omega"],
            dims=d["dims"],
            blocks=d["blocks"],
            verdicts=d["verdicts"],
            aut_order=d["aut_order"],
            flags=d["flags"],
        )


def analyze_vertex(
    g: Graph,
    gens,
    group: GroupBSGS,
    omega: int,
    primes=DEFAULT_PRIMES,
    rational: bool = False,
    aut_complete: bool = True,
) -> AlgebraReport:
    """Assemble the three reports and verdicts for one base vertex."""
    params = require_srg(g)
    dim0, blocks0 = t0_report(g, omega, primes, rational)
    dim1, blocks1 = t_report(g, omega, primes, rational)
    dim2, blocks2 = t_tilde_report(g, gens, omega, group=group)
    transitive, rank = transitivity_rank(group, g.n)
    rank3 = bool(transitive and rank == 3)
    equality = dim0 == dim1 == dim2
    flags: list[str] = []
    if not aut_complete:
        flags.append("aut_lower_bound_only")
    if transitive:
        verdict = bool(rank3 and equality)
        if not verdict and not aut_complete:
            verdict = None  # a larger true group could still equalize nothing; unknown
    else:
        verdict = None
        if aut_complete:
            flags.append("case_b_candidate")
    report = AlgebraReport(
        params=params,
        omega=omega,
        dims={"t0": dim0, "t": dim1, "t_tilde": dim2},
        blocks={
            "t0": blocks0.tolist(),
            "t": blocks1.tolist(),
            "t_tilde": blocks2.tolist(),
        },
        verdicts={
            "triply_regular": dim0 == dim1,
            "rank3": rank3,
            "triply_transitive": verdict,
        },
        aut_order=group.order,
        flags=flags,
    )
    if rank3:
        b = report.blocks["t_tilde"]
        if b[0] != [1, 1, 1] or b[1][0] != 1 or b[2][0] != 1 or b[1][2] != b[2][1]:
            raise InternalDisagreement("rank-3 centralizer blocks lack unit borders")
    return report

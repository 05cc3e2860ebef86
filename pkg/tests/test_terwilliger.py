"""Nested algebra dimensions at a base vertex and their cross-checks.

Frozen dimension triples in this file were derived before the pipeline ran:
the inner span from the closed-form intersection-number count, the outer one
from orbit counts of automorphism groups known in closed form.
"""

import numpy as np
import pytest

from srgta.autgrp import automorphism_group
from srgta.classifier import intersection_numbers
from srgta.families import FamilySpec, construct
from srgta.graphcore import ImprimitiveParams, require_srg
from srgta.permgroup import schreier_sims
from srgta.terwilliger import (
    AlgebraReport,
    Inconclusive,
    InternalDisagreement,
    NotTransitive,
    analyze_vertex,
    idempotents,
    t0_report,
    t_dim_spectral_crosscheck,
    t_report,
    t_tilde_report,
)


def full_report(g, timeout=300.0, rational=False):
    res = automorphism_group(g, timeout=timeout)
    group = schreier_sims(res.gens, n=g.n)
    return analyze_vertex(g, res.gens, group, 0, rational=rational)


def test_idempotent_traces(petersen):
    idem = idempotents(petersen, 0)
    assert idem.traces == (1, 3, 6)
    assert np.array_equal(sum(idem.masks), np.ones(10, dtype=np.int64))


def test_inner_span_dimensions(petersen, pentagon, k33):
    assert t0_report(petersen)[0] == 14
    assert t0_report(pentagon)[0] == 13
    assert t0_report(k33)[0] == 11
    assert t0_report(construct(FamilySpec("grid", (2,))))[0] == 10


def test_inner_span_blocks_match_intersection_template(petersen, paley13, grid3):
    for g in (petersen, paley13, grid3):
        nums = intersection_numbers(require_srg(g))
        template = [
            [int(np.count_nonzero(nums[i, :, k])) for k in range(3)]
            for i in range(3)
        ]
        _, blocks = t0_report(g)
        assert blocks.tolist() == template


def test_closure_dimensions(petersen, pentagon, grid3, paley13):
    assert t_report(petersen)[0] == 15
    assert t_report(pentagon)[0] == 13
    assert t_report(grid3)[0] == 15
    assert t_report(paley13)[0] == 21
    assert t_report(construct(FamilySpec("grid", (2,))))[0] == 10


def test_centralizer_dimensions(petersen, paley13):
    gens = automorphism_group(petersen).gens
    dim, blocks = t_tilde_report(petersen, gens)
    assert dim == 15
    assert blocks.tolist() == [[1, 1, 1], [1, 2, 2], [1, 2, 4]]

    gens = automorphism_group(paley13).gens
    dim, blocks = t_tilde_report(paley13, gens)
    assert dim == 29
    assert blocks.tolist() == [[1, 1, 1], [1, 6, 6], [1, 6, 6]]


def test_centralizer_with_trivial_group_is_full_matrix_space(petersen):
    dim, blocks = t_tilde_report(petersen, [])
    assert dim == 100
    assert blocks.tolist() == [[1, 3, 6], [3, 9, 18], [6, 18, 36]]
    with pytest.raises(NotTransitive):
        t_tilde_report(petersen, [], require_transitive=True)


@pytest.mark.parametrize(
    "tag,params",
    [
        ("cycle", (5,)),
        ("grid", (3,)),
        ("paley", (13,)),
        ("johnson", (5,)),
        ("johnson", (6,)),
        ("multipartite", (3, 3)),
        ("vo", (-1, 2, 2)),
    ],
)
def test_dimension_chain(tag, params):
    g = construct(FamilySpec(tag, params))
    report = full_report(g)
    t0, t, tt = (report.dims[key] for key in ("t0", "t", "t_tilde"))
    assert t0 <= t <= tt
    for key in ("t0", "t", "t_tilde"):
        assert sum(map(sum, report.blocks[key])) == report.dims[key]


def test_rational_substrate_agrees(petersen, paley13):
    for g in (petersen, paley13):
        assert full_report(g).dims == full_report(g, rational=True).dims


def test_petersen_full_report(petersen):
    report = full_report(petersen)
    assert report.params.astuple() == (10, 3, 0, 1)
    assert report.dims == {"t0": 14, "t": 15, "t_tilde": 15}
    assert report.verdicts == {
        "triply_regular": False,
        "rank3": True,
        "triply_transitive": False,
    }
    assert report.aut_order == 120
    assert report.flags == []
    assert report.r1 == 2 and report.r2 == 4 and report.t_offdiag == 2


def test_clebsch_full_report(clebsch):
    report = full_report(clebsch)
    assert report.dims == {"t0": 14, "t": 14, "t_tilde": 14}
    assert report.verdicts["triply_transitive"] is True
    assert report.aut_order == 1920


def test_report_json_roundtrip(petersen):
    report = full_report(petersen)
    assert AlgebraReport.from_json(report.to_json()) == report
    # serialization is deterministic
    assert report.to_json() == AlgebraReport.from_json(report.to_json()).to_json()


def test_report_validates_dimension_chain():
    good = {"t0": 1, "t": 1, "t_tilde": 1}
    blocks = {k: [[1, 0, 0], [0, 0, 0], [0, 0, 0]] for k in good}
    from srgta.graphcore import SrgParams

    with pytest.raises(InternalDisagreement):
        AlgebraReport(SrgParams(10, 3, 0, 1), 0, {"t0": 2, "t": 1, "t_tilde": 3}, blocks, {}, 1)
    with pytest.raises(InternalDisagreement):
        AlgebraReport(SrgParams(10, 3, 0, 1), 0, {"t0": 1, "t": 1, "t_tilde": 2}, blocks, {}, 1)
    AlgebraReport(SrgParams(10, 3, 0, 1), 0, good, blocks, {}, 1)  # fine


def test_incomplete_group_only_lower_bounds(petersen):
    res = automorphism_group(petersen)
    group = schreier_sims(res.gens, n=10)
    report = analyze_vertex(petersen, res.gens, group, 0, aut_complete=False)
    assert "aut_lower_bound_only" in report.flags
    assert report.verdicts["triply_transitive"] is None


def test_intransitive_group_gives_unknown_verdict(petersen):
    group = schreier_sims([], n=10)
    report = analyze_vertex(petersen, [], group, 0)
    assert report.verdicts["triply_transitive"] is None
    assert "case_b_candidate" in report.flags


def test_spectral_crosscheck_values(petersen, grid3, paley13, clebsch, k33):
    assert t_dim_spectral_crosscheck(petersen) == 15
    assert t_dim_spectral_crosscheck(grid3) == 15
    assert t_dim_spectral_crosscheck(paley13) == 21
    assert t_dim_spectral_crosscheck(construct(FamilySpec("johnson", (6,)))) == 16
    assert t_dim_spectral_crosscheck(clebsch) == 14
    with pytest.raises(ImprimitiveParams):
        t_dim_spectral_crosscheck(k33)


def test_inconclusive_sentinel_is_falsy():
    assert not Inconclusive
    assert repr(Inconclusive) == "Inconclusive"
    assert Inconclusive != 15

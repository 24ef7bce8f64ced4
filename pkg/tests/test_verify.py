import random

import pytest

from mckaygraphs.chartable import (
    CharVector,
    FaithfulSelfDualMinDim,
    compute_character_table,
    is_self_dual,
    resolve_rho,
)
from mckaygraphs.graphs import build_mckay_graph, decompose_components
from mckaygraphs.groups import (
    BinaryDihedral,
    BinaryPoly,
    Cyclic,
    Dihedral,
    Extraspecial2,
    build_group,
    conjugacy,
)
from mckaygraphs.shapes import is_forest
from mckaygraphs.verify import (
    CONSTRUCTIONS,
    ClassificationViolated,
    PreconditionViolated,
    fixture,
    tautological_graph,
    verify_bipartite_criterion,
    verify_centralizer_endo,
    verify_construction_531,
    verify_edge_count_identity,
    verify_forest_theorem,
    verify_newton_spectrum,
    verify_normal_tower,
    verify_sum_of_squares,
    verify_trace_identity,
    verify_tree_theorem,
)


def test_trace_identity_values():
    ctx = fixture(Dihedral(3))
    graph = tautological_graph(ctx)
    rec = verify_trace_identity(ctx, graph, 3)
    assert rec.passed
    # frozen: chi_ref = (2, -1, 0) over classes; power sums 1, 5, 7
    assert rec.expected == "[1, 5, 7]"


def test_trace_identity_bt_cubes_vanish():
    ctx = fixture(BinaryPoly("T"))
    graph = tautological_graph(ctx)
    rec = verify_trace_identity(ctx, graph, 3)
    assert rec.passed
    assert rec.expected == "[0, 12, 0]"  # bipartite: odd traces vanish


def test_edge_count_q8_and_bt():
    ctx = fixture(BinaryDihedral(2))
    graph = tautological_graph(ctx)
    rec = verify_edge_count_identity(ctx, graph)
    assert rec.passed and rec.observed == "[8, 8, 8]"
    ctx = fixture(BinaryPoly("T"))
    rec = verify_edge_count_identity(ctx, tautological_graph(ctx))
    assert rec.passed and rec.observed == "[12, 12, 12]"


def test_edge_count_precondition():
    ctx = fixture(Dihedral(3))  # has a loop
    graph = tautological_graph(ctx)
    with pytest.raises(PreconditionViolated):
        verify_edge_count_identity(ctx, graph)


def test_centralizer_endo_q8():
    ctx = fixture(BinaryDihedral(2))
    rec = verify_centralizer_endo(ctx, tautological_graph(ctx))
    assert rec.passed


def test_newton_spectrum_small():
    for spec in (BinaryPoly("T"), Dihedral(5), BinaryDihedral(4)):
        ctx = fixture(spec)
        rec = verify_newton_spectrum(ctx, tautological_graph(ctx))
        assert rec.passed


def test_bipartite_criterion_records():
    for spec, z, bip in [
        (BinaryDihedral(2), 2, True),
        (Dihedral(3), 1, False),
        (BinaryPoly("I"), 2, True),
    ]:
        ctx = fixture(spec)
        rec = verify_bipartite_criterion(ctx, tautological_graph(ctx))
        assert rec.passed
        assert rec.observed == f"|Z|={z}, bipartite={bip}"


def test_tree_theorem_cases():
    for spec in (Dihedral(8), BinaryPoly("O"), Extraspecial2(3, "+")):
        ctx = fixture(spec)
        rec = verify_tree_theorem(ctx, tautological_graph(ctx))
        assert rec.passed
    ctx = fixture(Extraspecial2(3, "+"))
    rec = verify_tree_theorem(ctx, tautological_graph(ctx))
    assert "4^3" in rec.observed
    # not a tree: precondition
    ctx = fixture(Dihedral(3))
    with pytest.raises(PreconditionViolated):
        verify_tree_theorem(ctx, tautological_graph(ctx))


def test_forest_theorem_on_matching():
    # an order-2 character of a cyclic group pairs up the vertices
    ctx = fixture(Cyclic(6))
    ct = ctx.ct
    idx = next(
        i
        for i in range(ct.r)
        if ct.degrees[i] == 1
        and is_self_dual(ct, ct.values[i])
        and i != ct.trivial_index
    )
    from mckaygraphs.chartable import Irrep

    graph = build_mckay_graph(ct, Irrep(idx))
    assert is_forest(graph.adjacency)
    rec = verify_forest_theorem(ctx, graph)
    assert rec.passed
    assert rec.observed.count("hedgehog(1)") == 3


def test_reducible_self_dual_never_forest():
    rng = random.Random(7)
    for spec in (Dihedral(4), BinaryDihedral(2), Dihedral(6)):
        ctx = fixture(spec)
        ct = ctx.ct
        inv = ct.conj.inverse_class
        for _ in range(20):
            mults = [rng.randint(0, 2) for _ in range(ct.r)]
            if sum(1 for m in mults if m) < 2:
                continue
            # symmetrize to keep the character self-dual
            chi = resolve_rho(ct, CharVector(tuple(mults))).chi
            dual = tuple(chi[inv[k]] for k in range(ct.r))
            sym = tuple(a + b for a, b in zip(chi, dual))
            from mckaygraphs.chartable import rho_from_class_function

            rho = rho_from_class_function(ct, sym)
            if rho.irreducible:
                continue
            graph = build_mckay_graph(ct, rho)
            assert not is_forest(graph.adjacency)


def test_sum_of_squares_bt_f4():
    fx = next(f for f in CONSTRUCTIONS if f.name == "btxF4")
    records = verify_construction_531(fx)
    by_id = {r.check_id: r for r in records}
    assert by_id["sumsq[btxF4]"].passed
    # component degree data: E~6 gives 24 = 24*1*1, D~4 star gives 72 = 24*1*3
    assert by_id["construction[btxF4]:shapes"].passed
    assert by_id["construction[btxF4]:union"].passed
    assert by_id["construction[btxF4]:divisibility"].passed


def test_construction_box_f4_spec_defect_is_isolated():
    fx = next(f for f in CONSTRUCTIONS if f.name == "boxF4")
    records = verify_construction_531(fx)
    by_id = {r.check_id: r for r in records}
    # the stated pair is impossible; the corrected stabilizer union holds
    assert not by_id["construction[boxF4]:union"].passed
    assert not by_id["construction[boxF4]:shapes"].passed
    assert by_id["construction[boxF4]:union-stabilizer"].passed
    assert by_id["construction[boxF4]:components"].passed
    assert by_id["sumsq[boxF4]"].passed
    assert by_id["construction[boxF4]:divisibility"].passed
    assert by_id["construction[boxF4]:forest-theorem"].passed
    assert "D~6" in by_id["construction[boxF4]:shapes"].observed


def test_normal_tower_records():
    records = verify_normal_tower()
    assert all(r.passed for r in records)
    ids = [r.check_id for r in records]
    assert ids == ["tower:subgroups", "tower:BO/BT", "tower:BO/Q8", "tower:BT/Q8"]


def test_decomposition_sum_of_squares_values():
    fx = next(f for f in CONSTRUCTIONS if f.name == "btxF4")
    from mckaygraphs.verify import build_construction

    *_, graph, decomp = build_construction(fx)
    comp_sums = sorted(sum(d * d for d in c.dims) for c in decomp.components)
    assert comp_sums == [24, 72]
    d4 = next(c for c in decomp.components if not c.principal)
    assert sorted(d4.dims) == [3, 3, 3, 3, 6]
    assert d4.orbit_size == 3 and d4.orbit_rep_degree == 1


def test_run_suite_parallel_matches_serial():
    import json

    from mckaygraphs.verify import run_suite

    serial = run_suite("forests", jobs=1)
    parallel = run_suite("forests", jobs=2)
    assert [r.check_id for r in serial.records] == [r.check_id for r in parallel.records]
    assert [r.passed for r in serial.records] == [r.passed for r in parallel.records]
    # report serialization round-trips
    blob = json.dumps(serial.to_dict())
    back = json.loads(blob)
    assert back["suite"] == "forests"
    assert len(back["checks"]) == len(serial.records)
    assert back["passed"] is False  # the one documented impossible expectation


def test_run_suite_unknown_name():
    import pytest as _pytest

    from mckaygraphs.verify import run_suite

    with _pytest.raises(ValueError):
        run_suite("bogus")


def test_construction_kernel_and_scaled_marking():
    from mckaygraphs.shapes import classify_component, pf_integer_vector_check
    from mckaygraphs.verify import build_construction

    fx = next(f for f in CONSTRUCTIONS if f.name == "btxF4")
    *_, graph, decomp = build_construction(fx)
    # the kernel of the lifted rho is exactly the twisted-in F_2^2 factor
    assert decomp.kernel.elements == (0, 1, 2, 3)
    # the star component carries the marking scaled by a = 3
    d4 = next(c for c in decomp.components if not c.principal)
    label = classify_component(d4.adjacency)
    ok, a = pf_integer_vector_check(d4.adjacency, d4.dims, graph.rho.dim, label)
    assert ok and a == 3

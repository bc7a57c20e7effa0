import random
from fractions import Fraction

import pytest

from horocycle.action import (
    PointNotOnVariety,
    RationalPoint,
    LieSubalgebra,
    builtin_lr_action_sl2,
    coinvariants,
    localization_fiber,
    lr_action_horocycle,
    lr_action_mat2,
    moment_map,
    stabilizer_subalgebra,
)
from horocycle.exactalg import ExactPoly, MAT2_VARS, det_poly
from horocycle.lie import (
    UEnvElement,
    casimir_sl2,
    dual_rep,
    external_tensor,
    sl2_desc,
    sl2_pair_desc,
    sym_power_rep,
    tensor,
)
from horocycle.linalg import is_zero_matrix, mat_mul
from horocycle.weyl import WeylOp, euler_op, weyl_mul

V = MAT2_VARS


def module(m, k):
    return external_tensor(sym_power_rep(m), dual_rep(sym_power_rep(k)))


def test_builtin_table_is_the_expected_one():
    act = lr_action_mat2()
    a = ExactPoly.variable(V, "a")
    b = ExactPoly.variable(V, "b")
    c = ExactPoly.variable(V, "c")
    d = ExactPoly.variable(V, "d")
    z = ExactPoly.zero(V)
    expected = {
        "E1": WeylOp.vector_field([-c, -d, z, z]),
        "F1": WeylOp.vector_field([z, z, -a, -b]),
        "H1": WeylOp.vector_field([-a, -b, c, d]),
        "E2": WeylOp.vector_field([z, a, z, c]),
        "F2": WeylOp.vector_field([b, z, d, z]),
        "H2": WeylOp.vector_field([a, -b, c, -d]),
    }
    for name, op in expected.items():
        assert act.field_of(name) == op, name


def test_action_constructions_validate():
    builtin_lr_action_sl2()
    lr_action_mat2()
    lr_action_horocycle()


def test_moment_map_multiplicative():
    rng = random.Random(4242)
    act = lr_action_mat2()
    pair = sl2_pair_desc()

    def rand_u():
        t = {}
        for _ in range(2):
            e = [0] * 6
            for _ in range(rng.randint(0, 2)):
                e[rng.randrange(6)] += 1
            t[tuple(e)] = Fraction(rng.randint(-3, 3))
        return UEnvElement(pair, t)

    for _ in range(50):
        u, v = rand_u(), rand_u()
        assert moment_map(u * v, act) == weyl_mul(moment_map(u, act), moment_map(v, act))


def test_moment_map_casimir_identity():
    act = lr_action_mat2()
    d2 = sl2_desc()
    cas = casimir_sl2()
    one = UEnvElement.one(d2)
    left = moment_map(tensor(cas, one), act)
    right = moment_map(tensor(one, cas), act)
    Eu = euler_op(V)
    Da, Db, Dc, Dd = (WeylOp.partial(V, v) for v in V)
    rhs = Eu * Eu - WeylOp.from_poly(det_poly()) * (Da * Dd - Db * Dc) * 4
    assert left == right == rhs
    assert moment_map(tensor(one, one), act) == WeylOp.one(V)


def test_stabilizer_at_identity_is_diagonal():
    act = builtin_lr_action_sl2()
    s = stabilizer_subalgebra(act, RationalPoint((1, 0, 0, 1)))
    assert s.dim == 3
    d2 = sl2_desc()
    for name in ("E", "F", "H"):
        vec = [0] * 6
        vec[d2.index(name)] = 1
        vec[3 + d2.index(name)] = 1
        assert s.contains(vec)


def test_stabilizer_dimension_three_across_group_points():
    act = builtin_lr_action_sl2()
    for coords in [(1, 0, 0, 1), (2, 0, 0, Fraction(1, 2)), (1, 1, 0, 1), (3, 1, 2, 1)]:
        s = stabilizer_subalgebra(act, RationalPoint(coords))
        assert s.dim == 3, coords


def test_stabilizer_at_twisted_diagonal_point():
    act = builtin_lr_action_sl2()
    s = stabilizer_subalgebra(act, RationalPoint((2, 0, 0, Fraction(1, 2))))
    # contains the matched Cartan (H, H); raising pairs twist by the square of the torus value
    vec = [0] * 6
    vec[1] = 1
    vec[4] = 1
    assert s.contains(vec)


def test_stabilizer_on_rank_one_chart():
    act = lr_action_horocycle()
    s = stabilizer_subalgebra(act, RationalPoint((1, 0, 0, 0)))
    assert s.dim == 3
    e1 = [0] * 6
    e1[2] = 1
    f2 = [0] * 6
    f2[3] = 1
    hh = [0] * 6
    hh[1] = 1
    hh[4] = 1
    for vec in (e1, f2, hh):
        assert s.contains(vec)


def test_point_validation():
    act = builtin_lr_action_sl2()
    with pytest.raises(PointNotOnVariety):
        stabilizer_subalgebra(act, RationalPoint((1, 2, 3, 4)))
    acty = lr_action_horocycle()
    with pytest.raises(PointNotOnVariety):
        stabilizer_subalgebra(acty, RationalPoint((0, 0, 0, 0)))


def test_coinvariants_dimension_table():
    act = builtin_lr_action_sl2()
    p = RationalPoint((1, 0, 0, 1))
    for m in range(4):
        for k in range(4):
            got = localization_fiber(module(m, k), act, p).dimension
            assert got == (1 if m == k else 0), (m, k)


def test_coinvariants_projection_annihilates_action():
    act = builtin_lr_action_sl2()
    s = stabilizer_subalgebra(act, RationalPoint((1, 1, 0, 1)))
    mod = module(2, 2)
    res = coinvariants(mod, s)
    for v in s.vectors:
        assert is_zero_matrix(mat_mul(res.projection, mod.rep.act_vector(list(v))))


def test_fiber_dimension_constant_on_orbits():
    act = builtin_lr_action_sl2()
    points = [RationalPoint((1, 0, 0, 1)), RationalPoint((2, 0, 0, Fraction(1, 2))), RationalPoint((1, 1, 0, 1))]
    for m, k in [(1, 1), (2, 1), (3, 3)]:
        dims = {localization_fiber(module(m, k), act, p).dimension for p in points}
        assert len(dims) == 1


def test_trivial_module_always_one():
    acty = lr_action_horocycle()
    act = builtin_lr_action_sl2()
    mod = external_tensor(sym_power_rep(0), sym_power_rep(0))
    assert localization_fiber(mod, act, RationalPoint((1, 0, 0, 1))).dimension == 1
    assert localization_fiber(mod, acty, RationalPoint((0, 1, 0, 0))).dimension == 1


def test_commuting_subalgebra_must_normalize():
    pair = sl2_pair_desc()
    e1 = tuple(1 if i == 2 else 0 for i in range(6))
    f1 = tuple(1 if i == 0 else 0 for i in range(6))
    nsub = LieSubalgebra(pair, (e1,))
    bad = LieSubalgebra(pair, (f1,))
    with pytest.raises(ValueError):
        coinvariants(module(1, 1), nsub, commuting=bad)


def test_induced_matrices_well_defined():
    pair = sl2_pair_desc()
    e1 = tuple(1 if i == 2 else 0 for i in range(6))
    f2 = tuple(1 if i == 3 else 0 for i in range(6))
    h1 = tuple(1 if i == 1 else 0 for i in range(6))
    h2 = tuple(1 if i == 4 else 0 for i in range(6))
    nsub = LieSubalgebra(pair, (e1, f2))
    hh = LieSubalgebra(pair, (h1, h2))
    res = coinvariants(module(1, 1), nsub, commuting=hh)
    assert res.dimension == 1
    assert len(res.induced) == 2
    json_form = res.to_json()
    assert set(json_form) == {"dim", "projection", "induced"}


def test_subalgebra_validation():
    pair = sl2_pair_desc()
    e1 = tuple(1 if i == 2 else 0 for i in range(6))
    with pytest.raises(ValueError):
        LieSubalgebra(pair, (e1, e1))
    h1 = tuple(1 if i == 1 else 0 for i in range(6))
    e1h1 = LieSubalgebra(pair, (e1, h1))  # closed: [h, e] = 2e
    assert e1h1.dim == 2
    f1 = tuple(1 if i == 0 else 0 for i in range(6))
    with pytest.raises(ValueError):
        LieSubalgebra(pair, (e1, f1))  # not closed: [e, f] = h missing

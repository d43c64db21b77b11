"""Standard family constructors and the twist machinery."""

import pytest

from bmwcert import (
    FieldMatrix,
    SYMBOLIC,
    TwistSpec,
    build_F,
    build_multiparametric,
    build_standard,
    check_twist_compat,
    compose,
    detect_nu,
    expected_pairings,
    factor_pairings,
    family_spec,
    full_verification,
    kappa_of,
    pairings_match_up_to_gauge,
    permutation_op,
    standard_matrix,
    twist_r,
    twisted_expected,
    validate_twist,
    xy_matrices,
)
from bmwcert.errors import BadDimension, InvalidTwistParameters

F = SYMBOLIC
q = F.q
one = F.one


def test_family_spec_rho_vectors():
    # rho stored as monomials q^rho_i, i.e. integer powers of s
    assert [r for r in family_spec("so", 3).rho] == [F.s, one, F.s**-1]
    assert [r for r in family_spec("so", 4).rho] == [q, one, one, q**-1]
    sp4 = family_spec("sp", 4)
    assert [r for r in sp4.rho] == [q**2, q, q**-1, q**-2]
    assert sp4.signs == (1, 1, -1, -1)
    assert family_spec("so", 5).signs == (1,) * 5


def test_family_spec_rho_antisymmetry():
    for series, dim in (("so", 3), ("so", 4), ("so", 5), ("so", 6), ("sp", 2), ("sp", 4), ("sp", 6)):
        spec = family_spec(series, dim)
        for i in range(dim):
            assert spec.rho[i] * spec.rho[dim - 1 - i] == one


def test_family_spec_bad_dimensions():
    with pytest.raises(BadDimension):
        family_spec("sp", 3)
    with pytest.raises(BadDimension):
        family_spec("so", 1)
    with pytest.raises(BadDimension):
        family_spec("su", 3)


def test_standard_matrix_matches_frozen_so3(so3_frozen):
    assert standard_matrix("so", 3) == so3_frozen
    assert standard_matrix("so", 3).mat.nnz() == 14


def test_standard_matrix_matches_frozen_sp2(sp2_frozen):
    assert standard_matrix("sp", 2) == sp2_frozen
    assert standard_matrix("sp", 2).mat.nnz() == 5


def test_build_standard_nu_values():
    assert build_standard("so", 3).nu == q**-2
    assert build_standard("sp", 2).nu == F.zero - q**-3


def test_build_standard_so5_certifies():
    assert full_verification(build_standard("so", 5)).status == "pass"


def test_detect_nu_on_so_families():
    for dim in (3, 4, 5, 6):
        assert detect_nu(build_standard("so", dim).R) == q ** (1 - dim)


def test_every_family_passes_everything():
    for series, dim in (("so", 3), ("so", 4), ("so", 5), ("so", 6), ("sp", 2), ("sp", 4), ("sp", 6)):
        res = full_verification(build_standard(series, dim))
        assert res.status == "pass", (series, dim, res.aborted)


def test_expected_pairings_contract_to_mu():
    for series, dim, mu in (
        ("so", 3, q + one + q**-1),
        ("sp", 2, F.zero - (q**2 + q**-2)),
    ):
        pair, x = expected_pairings(series, dim)
        total = F.zero
        for key, gv in pair.g.items():
            total = total + gv * pair.gbar[key]
        assert total == mu
        assert x == FieldMatrix.identity(dim, F)


def test_expected_pairings_x_identity_all_families():
    for series, dim in (("so", 3), ("so", 4), ("so", 5), ("sp", 2), ("sp", 4)):
        _, x = expected_pairings(series, dim)
        assert x == FieldMatrix.identity(dim, F)


def test_pipeline_pairings_match_closed_forms():
    for series, dim in (("so", 3), ("so", 4), ("so", 5), ("sp", 2), ("sp", 4)):
        sys = build_standard(series, dim)
        found = factor_pairings(kappa_of(sys))
        closed, _ = expected_pairings(series, dim)
        assert pairings_match_up_to_gauge(found, closed), (series, dim)


def test_validate_twist_any_n2():
    import random

    rng = random.Random(9)
    for _ in range(25):
        d = tuple(
            tuple(q ** rng.randint(-2, 2) * F.from_int(rng.randint(1, 3)) for _ in range(2))
            for _ in range(2)
        )
        validity = validate_twist(TwistSpec(d))
        assert validity.u[0] * validity.u[1] == validity.constant


def test_validate_twist_identity():
    validity = validate_twist(TwistSpec(((one, one), (one, one))))
    assert validity.u == (one, one)
    assert validity.w == (one, one)
    assert validity.constant == one


def test_validate_twist_violation_n3():
    # for N = 3 the middle index forces d_1j d_3j = d_2j^2; break it at j = 1
    rows = [[one] * 3 for _ in range(3)]
    rows[0][0] = q
    with pytest.raises(InvalidTwistParameters):
        validate_twist(TwistSpec(tuple(tuple(r) for r in rows)))


def test_validate_twist_rejects_zero():
    with pytest.raises(InvalidTwistParameters):
        validate_twist(TwistSpec(((one, F.zero), (one, one))))


def test_build_F_identity_twist_is_permutation():
    ident_twist = TwistSpec(((one, one), (one, one)))
    assert build_F(ident_twist) == permutation_op(2, 2, 1, 2, F)


def test_build_F_diagonal_action(sp2_twist):
    f_op = build_F(sp2_twist)
    p = permutation_op(2, 2, 1, 2, F)
    pf = compose(p, f_op)
    assert pf.entry((1, 2), (1, 2)) == q
    assert pf.entry((1, 1), (1, 1)) == one


def test_twist_compat_family_cases(sp2_twist, so4_twist):
    assert check_twist_compat(build_standard("sp", 2).R, build_F(sp2_twist)).passed
    assert check_twist_compat(build_standard("so", 4).R, build_F(so4_twist)).passed


def test_twist_compat_permutation_f_with_any_braided_r():
    # F = P satisfies the compatibility equalities with any R-matrix
    for series, dim in (("so", 3), ("sp", 2)):
        r = build_standard(series, dim).R
        p = permutation_op(dim, 2, 1, 2, F)
        assert check_twist_compat(r, p).passed


def test_twist_compat_invalid_d_fails():
    rows = [[one] * 3 for _ in range(3)]
    rows[0][0] = q  # violates the twist conditions for N = 3
    d = TwistSpec(tuple(tuple(r) for r in rows))
    f_entries = []
    for i in range(1, 4):
        for j in range(1, 4):
            f_entries.append(((j, i), (i, j), d.d[i - 1][j - 1]))
    from bmwcert import TensorOperator

    f_op = TensorOperator.from_entries(3, 2, F, f_entries)
    assert not check_twist_compat(build_standard("so", 3).R, f_op).passed


def test_twist_r_identity_twist_is_noop():
    ident_twist = TwistSpec(((one, one), (one, one)))
    sys = build_standard("sp", 2)
    twisted = twist_r(sys, build_F(ident_twist))
    assert twisted.R == sys.R
    assert twisted.nu == sys.nu


def test_twist_r_preserves_nu_and_certifies(so4_twist):
    sys = build_standard("so", 4)
    twisted = twist_r(sys, build_F(so4_twist))
    assert twisted.nu == sys.nu
    assert detect_nu(twisted.R) == sys.nu
    assert full_verification(twisted).status == "pass"


def test_build_multiparametric_identity_equals_standard():
    ident_twist = TwistSpec(((one, one), (one, one)))
    assert build_multiparametric("sp", 2, ident_twist).R == build_standard("sp", 2).R


def test_build_multiparametric_equals_generic(sp2_twist, so4_twist):
    # the constructor itself cross-checks the two routes; also compare here
    t1 = build_multiparametric("sp", 2, sp2_twist)
    g1 = twist_r(build_standard("sp", 2), build_F(sp2_twist))
    assert t1.R == g1.R
    t2 = build_multiparametric("so", 4, so4_twist)
    g2 = twist_r(build_standard("so", 4), build_F(so4_twist))
    assert t2.R == g2.R


def test_twisted_expected_sp2(sp2_twist):
    pair, x = twisted_expected("sp", 2, sp2_twist)
    assert x == FieldMatrix.from_entries(2, F, [(0, 0, q**-1), (1, 1, q)])
    sys = build_multiparametric("sp", 2, sp2_twist)
    found = factor_pairings(kappa_of(sys))
    assert pairings_match_up_to_gauge(found, pair)
    assert xy_matrices(found, F).X == x


def test_twisted_expected_identity_twist():
    ident_twist = TwistSpec(((one, one), (one, one)))
    _, x = twisted_expected("sp", 2, ident_twist)
    assert x == FieldMatrix.identity(2, F)


def test_twisted_x_determinant_one(sp2_twist, so4_twist):
    for series, dim, spec in (("sp", 2, sp2_twist), ("so", 4, so4_twist)):
        _, x = twisted_expected(series, dim, spec)
        det = F.one
        for i in range(dim):
            det = det * x.get(i, i)
        assert det == one


def test_twisted_so4_x_nonscalar(so4_twist):
    _, x = twisted_expected("so", 4, so4_twist)
    diag = [x.get(i, i) for i in range(4)]
    assert diag == [one, q**-2, q**2, one]


def test_twisted_sp4_certifies(so4_twist):
    # the same q-power parameters are admissible for the symplectic series
    sys = build_multiparametric("sp", 4, so4_twist)
    res = full_verification(sys)
    assert res.status == "pass", res.aborted
    assert [str(v) for v in res.derived["X_diag"]] == ["1", "q^-2", "q^2", "1"]


def test_so2_builds_and_certifies():
    sys = build_standard("so", 2)
    assert sys.nu == q**-1
    assert full_verification(sys).status == "pass"

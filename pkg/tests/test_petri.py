import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from petrilab.curve import INFINITY, Divisor, canonical_divisor
from petrilab.errors import EmptyLinearSystem, NotSpecial
from petrilab.hopf import image_span_dim, injective_on_factors
from petrilab.linalg import rank
from petrilab.petri import (
    base_points,
    bpf_trick_check,
    inequality_chain,
    is_base_point_free,
    pencil_basis,
    pencil_is_base_point_free,
    petri_matrix,
    petri_report,
    petri_tensor,
    remove_base_points,
    restricted_kernel_dim,
)
from petrilab.riemann_roch import h0
from petrilab.sampling import curve_for, hyperelliptic_family, rng_for, special_effective

PETRI_CONFIGS = [(7, 3), (11, 4), (13, 5), (23, 5), (None, 3)]


def test_petri_matrix_ranks(g3_q):
    C = g3_q
    assert rank(petri_matrix(C, Divisor((), 2))) == 3
    assert petri_matrix(C, Divisor((), 2)).ncols == 4
    D = Divisor.make({C.point(0, 1): 1}, 2)
    assert rank(petri_matrix(C, D)) == 2
    assert rank(petri_matrix(C, canonical_divisor(C))) == 3


def test_petri_requirements(g3_q):
    with pytest.raises(NotSpecial):
        petri_matrix(g3_q, Divisor((), 5))
    with pytest.raises(EmptyLinearSystem):
        petri_matrix(g3_q, Divisor((), -1))


def test_reports_on_genus_three(g3_q):
    C = g3_q
    R = petri_report(C, Divisor((), 2))
    assert (R.dim_im, R.dim_coker, R.e, R.h0_Km2D) == (3, 0, 0, 1)
    assert R.ok and R.bpf
    D = Divisor.make({C.point(0, 1): 1}, 2)
    R = petri_report(C, D)
    assert R.dim_coker == 1 and R.checks["martens"] and not R.bpf
    assert str(R.bpf_divisor) == "2*inf"


def test_report_on_genus_five(g5_f23):
    C = g5_f23
    R = petri_report(C, Divisor((), 4))
    assert (R.d, R.r, R.dim_im, R.dim_coker) == (4, 2, 5, 0)
    assert R.chain.restricted_kernel_dims == {2: 1, 3: 4}
    assert R.warnings  # d = 4 > g - 2
    assert petri_report(C, Divisor((), 2)).h0_Km2D == 3
    assert petri_report(C, Divisor((), 2)).warnings == ()


def test_base_points(g3_q):
    C = g3_q
    P = C.point(0, 1)
    assert base_points(C, Divisor.make({P: 1}, 2)) == [P]
    assert remove_base_points(C, Divisor.make({P: 1}, 2)) == (Divisor((), 2), [P])
    assert base_points(C, Divisor((), 2)) == []
    assert is_base_point_free(C, Divisor((), 2))
    assert is_base_point_free(C, Divisor.make({P: 1, C.conjugate(P): 1}))
    assert base_points(C, Divisor((), 3)) == [INFINITY]


def test_pencil_basis_is_base_point_free(g5_f23):
    C = g5_f23
    D = Divisor((), 4)
    s = pencil_basis(C, D)
    assert len(s) == 3 and pencil_is_base_point_free(C, D, s[0], s[1])


def test_restricted_kernels(g3_q, g5_f23):
    assert restricted_kernel_dim(g3_q, Divisor((), 2), 2) == 1
    assert bpf_trick_check(g3_q, Divisor((), 2))
    assert restricted_kernel_dim(g5_f23, Divisor((), 4), 2) == 1
    assert restricted_kernel_dim(g5_f23, Divisor((), 2), 2) == 3
    with pytest.raises(ValueError):
        restricted_kernel_dim(g5_f23, Divisor((), 4), 4)


def test_chain_examples(g3_q, g5_f23):
    ch = inequality_chain(g3_q, Divisor((), 2))
    assert (ch.e, ch.h0_Km2D, ch.lower_bound) == (0, 1, 1) and ch.ok
    ch = inequality_chain(g5_f23, Divisor((), 4))
    assert (ch.dim_im, ch.e, ch.h0_Km2D, ch.lower_bound) == (5, 0, 1, 1) and ch.ok
    ch = inequality_chain(g5_f23, Divisor((), 2))
    assert ch.r == 1 and ch.sequence_bound == ch.h0_Km2D


@pytest.mark.parametrize("p,g", PETRI_CONFIGS)
def test_family_attains_martens_equality(p, g):
    C = curve_for(p, g)
    seen = 0
    for k, m, D in hyperelliptic_family(C):
        R = petri_report(C, D)
        assert R.r == k and R.dim_coker == m == R.d - 2 * R.r
        seen += 1
    assert seen == g * (g - 1) // 2


@given(st.integers(0, 10**6), st.sampled_from(PETRI_CONFIGS))
def test_random_special_divisors(seed, config):
    C = curve_for(*config)
    D = special_effective(rng_for("petri", seed), C)
    R = petri_report(C, D, seed)
    assert R.ok, R.to_json()
    assert R.dim_im + R.dim_ker == (R.r + 1) * R.h0_KmD
    if R.chain is not None:
        # rank-nullity links the full restricted kernel to dim_im of the reduced divisor
        ch = R.chain
        assert ch.restricted_kernel_dims[ch.r + 1] == (ch.r + 1) * ch.h0_KmD - ch.dim_im


@given(st.integers(0, 10**6), st.sampled_from([(7, 2), (7, 3), (11, 3)]))
def test_petri_tensors_satisfy_hopf(seed, config):
    C = curve_for(*config)
    D = special_effective(rng_for("tensor", seed), C)
    T = petri_tensor(C, D)
    a, b, _ = T.dims
    assert injective_on_factors(T)
    assert image_span_dim(T) == rank(petri_matrix(C, D)) >= a + b - 1


def test_report_is_deterministic(g5_f23):
    D = Divisor((), 4)
    a = json.dumps(petri_report(g5_f23, D, 3).to_json(), sort_keys=True)
    b = json.dumps(petri_report(g5_f23, D, 3).to_json(), sort_keys=True)
    assert a == b


def test_h0_of_reduced_divisor_is_unchanged():
    C = curve_for(11, 4)
    for i in range(20):
        D = special_effective(rng_for("bp", i), C)
        Dp, removed = remove_base_points(C, D)
        assert h0(C, Dp) == h0(C, D)
        assert Dp.degree == D.degree - len(removed)

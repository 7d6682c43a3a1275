import math

import numpy as np
import pytest

from conftest import random_commuting_pair
from isotuple import classify
from isotuple import matrix_core as mc
from isotuple import transforms as tf
from isotuple.errors import InvalidArgumentError
from isotuple.generators import (
    jordan_isometric,
    jordan_symmetric,
    paper_example_squares,
    random_instance,
    random_unitary,
)
from isotuple.tuples import OperatorTuple, inverse_tuple

T_MAT = np.array([[1, 1], [0, 1]], dtype=complex)


def test_balanced_pair_is_one_isometric():
    A, B = paper_example_squares()
    assert classify.is_isometric(A, B, np.eye(2), 1)


def test_inverse_pair_is_never_isometric_small_degrees():
    A, _ = paper_example_squares()
    inv = inverse_tuple(A)
    eye = np.eye(2)
    for m in range(1, 11):
        assert not classify.is_isometric(inv, inv, eye, m)
        defect = tf.triangle(inv, inv, eye, m)
        assert mc.max_abs_diff(defect, (-3.0) ** m * eye) < 1e-9 * abs(3.0**m)


def test_jordan_symmetric_degrees():
    A = OperatorTuple.of(T_MAT.conj().T)
    B = OperatorTuple.of(T_MAT)
    assert classify.is_symmetric(A, B, np.eye(2), 3)
    assert not classify.is_symmetric(A, B, np.eye(2), 2)


def test_defect_profile_minimal_degrees():
    A, B = paper_example_squares()
    profile = classify.defect_profile(A, B, np.eye(2), k_max=6)
    assert profile.min_isometry_degree == 1
    assert profile.isometry_anomalies == ()

    T = OperatorTuple.of(T_MAT.conj().T), OperatorTuple.of(T_MAT)
    profile = classify.defect_profile(T[0], T[1], np.eye(2), k_max=8)
    assert profile.min_symmetry_degree == 3
    assert profile.min_isometry_degree == 3  # unit eigenvalue Jordan block
    assert profile.symmetry_anomalies == () and profile.isometry_anomalies == ()


def test_defect_profile_absent_degree_for_growing_defects():
    A, _ = paper_example_squares()
    inv = inverse_tuple(A)
    profile = classify.defect_profile(inv, inv, np.eye(2), k_max=12)
    assert profile.min_isometry_degree is None


def test_defect_profile_norms_match_direct_evaluation():
    A, B, X = random_commuting_pair(77, 2, 3)
    profile = classify.defect_profile(A, B, X, k_max=6)
    for k in range(7):
        assert abs(profile.triangle_norms[k] - mc.fro_norm(tf.triangle(A, B, X, k))) < 1e-10
        assert abs(profile.delta_norms[k] - mc.fro_norm(tf.delta(A, B, X, k))) < 1e-10


def test_defect_profile_rejects_bad_kmax():
    A, B = paper_example_squares()
    with pytest.raises(InvalidArgumentError):
        classify.defect_profile(A, B, np.eye(2), k_max=0)


def test_degree_monotonicity_on_generated_instances():
    factories = [
        lambda s: (jordan_isometric(np.exp(2j * np.pi * (s % 7) / 7.0), 2), 3),
        lambda s: (jordan_symmetric(1.0 + 0.1 * (s % 5), 3), 5),
        lambda s: (jordan_isometric(1.0, 3), 5),
    ]
    for s in range(24):
        T, expected = factories[s % 3](s)
        A, B = OperatorTuple.of(T.conj().T), OperatorTuple.of(T)
        profile = classify.defect_profile(A, B, np.eye(T.shape[0]), k_max=12)
        key = "isometry" if s % 3 != 1 else "symmetry"
        min_deg = getattr(profile, f"min_{key}_degree")
        anomalies = getattr(profile, f"{key}_anomalies")
        assert min_deg == expected
        assert anomalies == ()


def test_isosymmetric_classifier():
    T = jordan_isometric(1.0, 2)
    A, B = OperatorTuple.of(T.conj().T), OperatorTuple.of(T)
    assert classify.is_isosymmetric(A, B, np.eye(2), 3, 1)
    # with no symmetric smoothing the degree-1 isometric defect is the full
    # T*T - I, which does not vanish for the Jordan block
    assert not classify.is_isosymmetric(A, B, np.eye(2), 1, 0)


def test_spherical_reduction_for_unitary():
    U = random_unitary(np.random.default_rng(5), 3)
    report = classify.spherical_reduction_check(OperatorTuple.of(U))
    assert report["one_isometric"]
    assert report["gram_condition"] < 10.0


def test_spherical_reduction_for_balanced_unitary_pair():
    U = random_unitary(np.random.default_rng(8), 3)
    A = OperatorTuple.of(U / math.sqrt(2.0), U / math.sqrt(2.0))
    report = classify.spherical_reduction_check(A)
    assert report["one_isometric"]


def test_spherical_reduction_rejects_inverse_tuple():
    A, _ = paper_example_squares()
    with pytest.raises(InvalidArgumentError):
        classify.spherical_reduction_check(inverse_tuple(A))


def test_profile_min_degree_matches_classifier_verdicts():
    bundle = random_instance("pro01", 4)
    A, B, X = bundle.tuples["A"], bundle.tuples["B"], bundle.matrices["X"]
    profile = classify.defect_profile(A, B, X, k_max=8)
    k = profile.min_isometry_degree
    assert k is not None
    assert classify.is_isometric(A, B, X, k)
    if k > 0:
        assert not classify.is_isometric(A, B, X, k - 1)

import json
import math
from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).parent / "fixtures"

from ritzbounds import harness, linalg, matio
from ritzbounds.errors import GridInvalidError, ParseError, SpecInvalidError
from ritzbounds.harness import InstanceSpec, evaluate_instance, generate, verify_all
from ritzbounds.subspaces import principal_angles


def spec_invariant(seed=0, eps=1e-1, d=8, k=3):
    return InstanceSpec(d=d, k=k, spectrum=("uniform", -1.0, 1.0),
                        subspace_mode=("invariant_plus_perturbation", eps), seed=seed)


# --- generation ---------------------------------------------------------------

def test_generate_deterministic():
    s = spec_invariant(seed=1234)
    A1, X1, Y1 = generate(s)
    A2, X2, Y2 = generate(s)
    assert (A1 == A2).all() and (X1 == X2).all() and (Y1 == Y2).all()


def test_generate_worked_example_matrices():
    th = math.pi / 3
    A, X, Y = generate(InstanceSpec(d=4, k=2, spectrum=("exa1", 0, 1, 2, 3, th),
                                    subspace_mode=("worked_example",)))
    np.testing.assert_array_equal(A, np.diag([0.0, 1.0, 2.0, 3.0]).astype(complex))
    np.testing.assert_array_equal(X, np.eye(4, 2, dtype=complex))
    expect_y = np.zeros((4, 2), dtype=complex)
    expect_y[0, 0] = 1.0
    expect_y[1, 1] = math.cos(th)
    expect_y[2, 1] = math.sin(th)
    np.testing.assert_array_equal(Y, expect_y)
    A2, _, _ = generate(InstanceSpec(d=4, k=2, spectrum=("exa2", 0, 1, 2, 3, th),
                                     subspace_mode=("worked_example",)))
    np.testing.assert_array_equal(np.diag(A2).real, [0.0, 1.0, 3.0, 2.0])


def test_generate_zero_perturbation_gives_equal_subspaces():
    A, X, Y = generate(spec_invariant(eps=0.0))
    assert np.all(principal_angles(X, Y) <= 1e-7)
    assert X.shape == Y.shape


def test_generate_spectrum_modes():
    s = InstanceSpec(d=6, k=2, spectrum=("explicit", 5, 4, 3, 2, 1, 0),
                     subspace_mode=("random_pair",), seed=7)
    A, _, _ = generate(s)
    np.testing.assert_allclose(linalg.hermitian_eig(A).eigenvalues,
                               [5, 4, 3, 2, 1, 0], atol=1e-10)
    s = InstanceSpec(d=9, k=3, spectrum=("clustered", 2.0),
                     subspace_mode=("random_pair",), seed=8)
    A, _, _ = generate(s)
    lam = linalg.hermitian_eig(A).eigenvalues
    assert lam[0] - lam[-1] > 1.0  # clusters separated by the gap


def test_generate_invariant_choice():
    s = InstanceSpec(d=8, k=2, spectrum=("uniform", 0.0, 1.0),
                     subspace_mode=("invariant_plus_perturbation", 0.0),
                     seed=5, invariant_choice=(3, 6))
    A, X, _ = generate(s)
    ritz = linalg.hermitian_eig(X.conj().T @ A @ X).eigenvalues
    lam = linalg.hermitian_eig(A).eigenvalues
    np.testing.assert_allclose(ritz, lam[[3, 6]], atol=1e-9)


def test_generate_validation():
    with pytest.raises(SpecInvalidError):
        generate(InstanceSpec(d=8, k=5, subspace_mode=("random_pair",)))  # k > d/2
    with pytest.raises(SpecInvalidError):
        generate(InstanceSpec(d=4, k=2, spectrum=("explicit", 1, 2),
                              subspace_mode=("random_pair",)))
    with pytest.raises(SpecInvalidError):
        generate(InstanceSpec(d=4, k=2, spectrum=("uniform", 1.0, 0.0),
                              subspace_mode=("random_pair",)))
    with pytest.raises(SpecInvalidError):
        generate(InstanceSpec(d=4, k=2, subspace_mode=("worked_example",)))
    with pytest.raises(SpecInvalidError):
        generate(InstanceSpec(d=4, k=2, spectrum=("exa1", 0, 1, 2, 3, 0.5),
                              subspace_mode=("random_pair",)))


# --- batch verification ---------------------------------------------------------

def test_verify_all_zero_violations_and_exhaustive_tallies():
    for spec in (spec_invariant(seed=21), InstanceSpec(
            d=7, k=2, spectrum=("uniform", -2.0, 2.0),
            subspace_mode=("random_pair",), seed=22)):
        report = verify_all(spec, trials=25, threads=1)
        assert report.total_failures == 0
        for tid, tally in report.tallies.items():
            assert tally.total == 25, (tid, tally)


def test_verify_all_deterministic_across_threads():
    spec = spec_invariant(seed=33)
    a = verify_all(spec, trials=10, threads=1).to_dict()
    b = verify_all(spec, trials=10, threads=3).to_dict()
    a.pop("elapsed_s")
    b.pop("elapsed_s")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_verify_all_honors_thread_env(monkeypatch):
    monkeypatch.setenv("RITZ_BOUNDS_THREADS", "2")
    spec = spec_invariant(seed=34)
    report = verify_all(spec, trials=6)
    assert report.total_failures == 0


def test_verify_all_flags_and_replays():
    # an impossible slack forces every verdict to fail, exercising the
    # flag records; replaying a flagged seed reproduces the margins
    spec = spec_invariant(seed=35)
    report = verify_all(spec, trials=3, tol=-1.0, threads=1)
    assert report.total_failures > 0
    flag = report.flagged[0]
    replay_spec = InstanceSpec(
        d=flag["spec"]["d"], k=flag["spec"]["k"],
        spectrum=tuple(flag["spec"]["spectrum"]),
        subspace_mode=tuple(flag["spec"]["subspace_mode"]),
        seed=flag["seed"],
        invariant_choice=flag["spec"]["invariant_choice"],
    )
    A, X, Y = generate(replay_spec)
    reports, _ = evaluate_instance(A, X, Y, tol=-1.0, seed=flag["seed"])
    margins = {r.theorem_id: r.verdict.worst_margin for r in reports}
    assert margins[flag["theorem"]] == flag["margin"]


def test_evaluate_instance_skips_orthogonal_pair():
    # Y orthogonal to X: the acute-angle bounds must be skipped with the
    # angle reason, not evaluated or failed
    A = np.diag([4.0, 3.0, 2.0, 1.0]).astype(complex)
    X = np.eye(4, 2, dtype=complex)
    Y = np.zeros((4, 2), dtype=complex)
    Y[2, 0] = Y[3, 1] = 1.0
    reports, skips = evaluate_instance(A, X, Y)
    assert skips["mixed_cos"] == "angles_too_large"
    assert skips["mixed_tan"] == "angles_too_large"
    assert skips["apriori_mixed"] == "angles_too_large"
    evaluated = {r.theorem_id for r in reports}
    assert "mixed_cos" not in evaluated
    assert "residual_projection" in evaluated  # no angle hypothesis there


def test_verify_all_single_trial_on_worked_example():
    spec = InstanceSpec(d=4, k=2, spectrum=("exa1", 0, 1, 2, 3, math.pi / 3),
                        subspace_mode=("worked_example",), seed=0)
    report = verify_all(spec, trials=1, threads=1)
    assert report.total_failures == 0
    for tid in ("mixed_cos", "mixed_tan"):
        assert abs(report.tallies[tid].worst_margin) <= 1e-10  # sharp


def test_battery_on_partially_intersecting_pairs():
    # shared directions make dim(X + Y) fall strictly between k and 2k, so
    # the spread vector has trailing negative entries paired with zero
    # angles; the whole battery must still hold
    from ritzbounds.rng import SplitMix64
    from ritzbounds.subspaces import intersection_dimension, subspace_sum

    for seed in range(8):
        gen = SplitMix64(9000 + seed)
        d, k, shared = 9, 3, 1 + (seed % 2)
        lam = np.sort(gen.uniform(d))[::-1] * 3
        U = linalg.orthonormalize(gen.complex_normal(d, d), 1e-12)
        A = linalg.hermitian_part(U @ np.diag(lam.astype(complex)) @ U.conj().T)
        X = U[:, :k].copy() if seed % 3 == 0 else linalg.orthonormalize(
            gen.complex_normal(d, k), 1e-12)
        fresh = gen.complex_normal(d, k - shared)
        if seed % 3 == 0:
            fresh -= X @ (X.conj().T @ fresh)
        Y = linalg.orthonormalize(np.hstack([X[:, :shared], fresh]), 1e-12)
        assert subspace_sum(X, Y).shape[1] == 2 * k - shared
        assert intersection_dimension(X, Y) == shared
        reports, _ = evaluate_instance(A, X, Y, seed=seed)
        for rep in reports:
            if not rep.metadata.get("experimental"):
                assert rep.verdict.holds, rep.theorem_id


def test_experimental_conjectures_never_counted_as_failures():
    spec = spec_invariant(seed=36, eps=1e-2)
    report = verify_all(spec, trials=10, threads=1)
    assert set(report.experimental) == {"conjecture_spread_sin",
                                        "conjecture_spread_sin_squared"}
    for info in report.experimental.values():
        assert info["evaluated"] == 10
    assert "conjecture_spread_sin" not in report.tallies


# --- sweeps and example reports -------------------------------------------------

def test_sweep_rotated_family_margins_vanish():
    rows = harness.sweep_theta("exa1", [0.1, 0.5, 1.0, 1.4])
    for row in rows:
        assert abs(row["cos_margin"]) <= 1e-10
        assert abs(row["tan_margin"]) <= 1e-10
        assert row["holds"]


def test_sweep_separated_family_closed_forms():
    thetas = [math.pi / 12, math.pi / 6, math.pi / 4 - 0.01]
    rows = harness.sweep_theta("exa2", thetas)
    for th, row in zip(thetas, rows):
        assert abs(row["improved_ratio"] - math.tan(th)) <= 1e-10
        assert abs(row["classical_ratio"] - math.tan(2 * th)) <= 1e-10
    # past the threshold the classical column is empty, improved persists
    row = harness.sweep_theta("exa2", [math.pi / 3])[0]
    assert row["delta"] is None and row["classical_ratio"] is None
    assert abs(row["improved_ratio"] - math.tan(math.pi / 3)) <= 1e-10


def test_sweep_small_angle_limit():
    row = harness.sweep_theta("exa1", [1e-6])[0]
    assert max(abs(v) for v in row["lhs"] + row["cos_rhs"] + row["tan_rhs"]) <= 1e-11
    assert max(abs(row["lhs_1"]), abs(row["cos_rhs_1"]), abs(row["tan_rhs_1"])) <= 1e-11


def test_sweep_grid_validation():
    with pytest.raises(GridInvalidError):
        harness.sweep_theta("exa1", [])
    with pytest.raises(GridInvalidError):
        harness.sweep_theta("exa1", [0.0, 0.3])
    with pytest.raises(GridInvalidError):
        harness.sweep_theta("exa2", [math.pi / 2])
    with pytest.raises(SpecInvalidError):
        harness.sweep_theta("exa9", [0.3])


# --- matrix files ----------------------------------------------------------------

def test_matrix_round_trip_bit_identical(tmp_path):
    gen_path = tmp_path / "m.json"
    from ritzbounds.rng import SplitMix64

    M = SplitMix64(99).complex_normal(5, 3)
    matio.save_matrix(gen_path, M)
    np.testing.assert_array_equal(matio.load_matrix(gen_path), M)
    H = linalg.hermitian_part(SplitMix64(100).complex_normal(4, 4))
    matio.save_matrix(gen_path, H)
    np.testing.assert_array_equal(matio.load_matrix(gen_path), H)


def test_matrix_parse_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError) as exc:
        matio.load_matrix(p)
    assert "line" in str(exc.value)
    p.write_text('{"d": 2, "entries": [[1, 0], [0, 0], [0, 0]]}')
    with pytest.raises(ParseError) as exc:
        matio.load_matrix(p)
    assert "entries" in str(exc.value)
    p.write_text('{"d": 2, "entries": [[1, 0], [0, 0], [0, 0], ["x", 0]]}')
    with pytest.raises(ParseError) as exc:
        matio.load_matrix(p)
    assert "entries[3]" in str(exc.value)
    p.write_text('{"entries": []}')
    with pytest.raises(ParseError):
        matio.load_matrix(p)


def test_checked_in_fixture_matches_diagonal():
    A = matio.load_matrix(FIXTURES / "exa1_A.json")
    np.testing.assert_array_equal(A, np.diag([0.0, 1.0, 2.0, 3.0]).astype(complex))


def test_pad_zeros_is_explicit():
    np.testing.assert_array_equal(harness.pad_zeros([2.0, 1.0], 4), [2.0, 1.0, 0.0, 0.0])
    np.testing.assert_array_equal(harness.pad_zeros([1.0], 1), [1.0])
    with pytest.raises(SpecInvalidError):
        harness.pad_zeros([1.0, 2.0], 1)
    # comparisons themselves never pad
    from ritzbounds.errors import DimensionMismatchError
    from ritzbounds.majorization import submajorizes

    with pytest.raises(DimensionMismatchError):
        submajorizes([1.0, 0.0], [1.0])

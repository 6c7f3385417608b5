import numpy as np
import pytest

from prstab import (
    ConditioningError,
    Field,
    RecoveryProblem,
    check_error_bound,
    dist,
    make_gaussian_problem,
    phaseless_map,
    sample_gaussian_matrix,
    solve_quadratic_model,
    universal_lower_bound,
)


class TestSolver:
    def test_noiseless_recovery(self):
        problem = make_gaussian_problem(50, 5, Field.REAL, noise_level=0.0, seed=1)
        result = solve_quadratic_model(problem, seed=1)
        assert result.dist_to_truth <= 1e-8
        assert result.certified
        assert result.residual <= 1e-8

    def test_noiseless_recovery_complex(self):
        problem = make_gaussian_problem(80, 4, Field.COMPLEX, noise_level=0.0, seed=2)
        result = solve_quadratic_model(problem, seed=2)
        assert result.dist_to_truth <= 1e-8

    def test_zero_measurements_give_zero(self):
        A = sample_gaussian_matrix(20, 3, Field.REAL, seed=3)
        result = solve_quadratic_model(RecoveryProblem(matrix=A, b=np.zeros(20)))
        assert np.linalg.norm(result.x_hat) == 0.0
        assert result.residual == 0.0

    def test_residual_history_nonincreasing(self):
        problem = make_gaussian_problem(120, 4, Field.REAL, noise_level=0.1, seed=4)
        result = solve_quadratic_model(problem, seed=4)
        hist = result.residual_history
        assert all(a >= b - 1e-9 for a, b in zip(hist, hist[1:]))

    def test_certified_implies_two_eta_identity(self):
        for trial in range(6):
            problem = make_gaussian_problem(150, 3, Field.REAL, noise_level=0.1, seed=trial)
            result = solve_quadratic_model(problem, seed=trial)
            if result.certified:
                gap = np.linalg.norm(
                    phaseless_map(problem.matrix, result.x_hat)
                    - phaseless_map(problem.matrix, problem.x0)
                )
                assert gap <= 2 * np.linalg.norm(problem.eta) + 1e-9

    def test_solution_only_defined_up_to_sign(self):
        problem = make_gaussian_problem(60, 3, Field.REAL, noise_level=0.0, seed=6)
        result = solve_quadratic_model(problem, seed=6)
        raw = np.linalg.norm(result.x_hat - problem.x0)
        flipped = np.linalg.norm(result.x_hat + problem.x0)
        assert min(raw, flipped) == pytest.approx(dist(result.x_hat, problem.x0), abs=1e-12)

    def test_qr_path_matches_normal_equations(self):
        # d above the normal-equation cutoff exercises the QR branch
        problem = make_gaussian_problem(400, 12, Field.REAL, noise_level=0.0, seed=7)
        result = solve_quadratic_model(problem, seed=7)
        assert result.dist_to_truth <= 1e-7

    def test_rank_deficient_matrix_raises(self):
        A = np.zeros((6, 2))
        A[:, 0] = np.arange(1, 7)
        with pytest.raises(ConditioningError):
            solve_quadratic_model(RecoveryProblem(matrix=A, b=np.ones(6)))

    def test_b_length_validated(self):
        A = sample_gaussian_matrix(5, 2, Field.REAL, seed=0)
        with pytest.raises(ValueError):
            RecoveryProblem(matrix=A, b=np.ones(4))

    def test_deterministic_given_seed(self):
        problem = make_gaussian_problem(100, 4, Field.REAL, noise_level=0.05, seed=8)
        r1 = solve_quadratic_model(problem, seed=8)
        r2 = solve_quadratic_model(problem, seed=8)
        assert np.array_equal(r1.x_hat, r2.x_hat)
        assert r1.residual == r2.residual

    def test_thread_count_does_not_change_result(self):
        problem = make_gaussian_problem(100, 4, Field.REAL, noise_level=0.05, seed=9)
        r1 = solve_quadratic_model(problem, seed=9, threads=1)
        r4 = solve_quadratic_model(problem, seed=9, threads=4)
        assert np.array_equal(r1.x_hat, r4.x_hat)
        assert r1.residual_history == r4.residual_history
        assert r1.best_start == r4.best_start


class TestProblemSynthesis:
    def test_exact_decomposition_and_nonnegativity(self):
        problem = make_gaussian_problem(200, 4, Field.REAL, noise_level=0.2, seed=9)
        b0 = phaseless_map(problem.matrix, problem.x0)
        assert np.array_equal(problem.b, b0 + problem.eta)
        assert (problem.b >= 0).all()

    def test_noise_norm_scaling(self):
        problem = make_gaussian_problem(200, 4, Field.REAL, noise_level=0.1, seed=10)
        b0 = phaseless_map(problem.matrix, problem.x0)
        assert np.linalg.norm(problem.eta) == pytest.approx(0.1 * np.linalg.norm(b0))


class TestErrorBound:
    def test_zero_noise_degenerates(self):
        problem = make_gaussian_problem(50, 5, Field.REAL, noise_level=0.0, seed=11)
        result = solve_quadratic_model(problem, seed=11)
        out = check_error_bound(result, problem, delta=0.05)
        assert out["bound"] == 0.0
        assert out["achieved"] <= 1e-8
        assert out["holds"] in (True, False)

    def test_real_coefficient(self):
        # 2 * beta0 matches the quoted 3.3178 prefactor
        assert 2 * universal_lower_bound(Field.REAL) == pytest.approx(3.3178, abs=2e-4)

    def test_complex_coefficient(self):
        assert 2 * universal_lower_bound(Field.COMPLEX) == pytest.approx(4.3173, abs=2e-4)

    def test_delta_validation(self):
        problem = make_gaussian_problem(50, 5, Field.REAL, noise_level=0.1, seed=12)
        result = solve_quadratic_model(problem, seed=12)
        with pytest.raises(ValueError):
            check_error_bound(result, problem, delta=0.2)
        with pytest.raises(ValueError):
            check_error_bound(result, problem, delta=0.0)
        check_error_bound(result, problem, delta=0.05)

    def test_requires_ground_truth(self):
        A = sample_gaussian_matrix(10, 2, Field.REAL, seed=13)
        problem = RecoveryProblem(matrix=A, b=np.abs(A @ np.ones(2)))
        result = solve_quadratic_model(problem)
        with pytest.raises(ValueError):
            check_error_bound(result, problem)

    def test_bound_holds_on_certified_trials(self):
        held = total = 0
        for trial in range(20):
            problem = make_gaussian_problem(300, 3, Field.REAL, noise_level=0.1, seed=trial)
            result = solve_quadratic_model(problem, seed=trial)
            if not result.certified:
                continue
            total += 1
            held += check_error_bound(result, problem, delta=0.05)["holds"]
        assert total >= 15
        assert held / total >= 0.9

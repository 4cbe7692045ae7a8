"""
Unit-тесты для модуля sphframes.legendre

Покрытие:
  - Значения и производные P_n (рекуррентность, P_n(1) = 1)
  - Корни P_N методом Ньютона, симметрия и перемены знака
  - Числа Кристоффеля: точность квадратуры, сумма весов, эквивалентность
    интегралам фундаментальных многочленов
  - Присоединённые функции Лежандра в нормировке Шмидта
  - Ошибки области определения
"""

import math

import mpmath
import numpy as np
import pytest
from numpy.polynomial import legendre as npleg

from src.sphframes.errors import DomainError
from src.sphframes.legendre import QuadratureRule
from src.sphframes.legendre import assoc_legendre_schmidt
from src.sphframes.legendre import assoc_legendre_table
from src.sphframes.legendre import christoffel_numbers
from src.sphframes.legendre import lagrange_fundamental
from src.sphframes.legendre import legendre_roots
from src.sphframes.legendre import legendre_table
from src.sphframes.legendre import legendre_value_and_derivative

# ──────────────────────────────────────────────
#  P_n и P_n'
# ──────────────────────────────────────────────


class TestLegendreValueAndDerivative:
    """Тесты legendre_value_and_derivative."""

    def test_degree_zero(self):
        """P_0 ≡ 1, производная 0."""
        assert legendre_value_and_derivative(0, 0.3) == (1.0, 0.0)

    def test_degree_two_at_origin(self):
        """P_2(0) = -1/2, P_2'(0) = 0."""
        p, dp = legendre_value_and_derivative(2, 0.0)
        assert p == pytest.approx(-0.5, abs=1e-15)
        assert dp == pytest.approx(0.0, abs=1e-15)

    def test_degree_five_matches_explicit_coefficients(self):
        """P_5 = (63x^5 - 70x^3 + 15x)/8 и её производная."""
        x = 0.7
        expected = (63 * x**5 - 70 * x**3 + 15 * x) / 8
        expected_d = (315 * x**4 - 210 * x**2 + 15) / 8
        p, dp = legendre_value_and_derivative(5, x)
        assert p == pytest.approx(expected, abs=1e-12)
        assert dp == pytest.approx(expected_d, abs=1e-12)

    @pytest.mark.parametrize("n", range(0, 60, 7))
    def test_value_at_one_is_exact(self, n):
        """P_n(1) == 1 без погрешности."""
        p, dp = legendre_value_and_derivative(n, 1.0)
        assert p == 1.0
        assert dp == pytest.approx(n * (n + 1) / 2, rel=1e-13)

    def test_vectorized_matches_numpy(self):
        """Векторный вызов совпадает с numpy.polynomial.legendre."""
        x = np.linspace(-1.0, 1.0, 41)
        p, dp = legendre_value_and_derivative(9, x)
        coef = np.zeros(10)
        coef[9] = 1.0
        np.testing.assert_allclose(p, npleg.legval(x, coef), atol=1e-13)
        np.testing.assert_allclose(dp, npleg.legval(x, npleg.legder(coef)), atol=1e-11)

    def test_slightly_outside_is_clamped(self):
        """|x| <= 1 + 1e-12 допускается и прижимается к границе."""
        p, _ = legendre_value_and_derivative(3, 1.0 + 1e-13)
        assert p == 1.0

    def test_outside_domain_raises(self):
        """|x| > 1 + 1e-12 → DomainError."""
        with pytest.raises(DomainError, match="outside"):
            legendre_value_and_derivative(2, 1.5)

    def test_negative_degree_raises(self):
        with pytest.raises(DomainError):
            legendre_value_and_derivative(-1, 0.0)


class TestLegendreTable:
    """Тесты legendre_table."""

    def test_rows_match_numpy(self):
        """Строка n таблицы совпадает с P_n из numpy."""
        x = np.linspace(-1.0, 1.0, 17)
        table = legendre_table(12, x)
        assert table.shape == (13, 17)
        for n in range(13):
            coef = np.zeros(n + 1)
            coef[n] = 1.0
            np.testing.assert_allclose(table[n], npleg.legval(x, coef), atol=1e-13)


# ──────────────────────────────────────────────
#  Корни и правило Гаусса-Лежандра
# ──────────────────────────────────────────────


class TestLegendreRoots:
    """Тесты legendre_roots."""

    def test_order_one(self):
        np.testing.assert_array_equal(legendre_roots(1), [0.0])

    def test_order_two(self):
        """Корни 3x^2 - 1."""
        np.testing.assert_allclose(
            legendre_roots(2), [-0.5773502691896258, 0.5773502691896258], atol=1e-15
        )

    def test_order_three(self):
        """Корни 5x^3 - 3x."""
        r = math.sqrt(0.6)
        np.testing.assert_allclose(legendre_roots(3), [-r, 0.0, r], atol=1e-15)

    @pytest.mark.parametrize("N", [4, 7, 16, 32])
    def test_roots_are_zeros(self, N):
        """|P_N(λ_k)| < 1e-13, корни возрастают и лежат в (-1, 1)."""
        roots = legendre_roots(N)
        p, _ = legendre_value_and_derivative(N, roots)
        assert np.max(np.abs(p)) < 1e-13
        assert np.all(np.diff(roots) > 0)
        assert roots[0] > -1.0 and roots[-1] < 1.0

    @pytest.mark.parametrize("N", [5, 12, 25])
    def test_exact_symmetry(self, N):
        """λ_k = -λ_{N+1-k} точно."""
        roots = legendre_roots(N)
        np.testing.assert_array_equal(roots, -roots[::-1])

    @pytest.mark.parametrize("N", [3, 8, 20])
    def test_one_sign_change_per_root(self, N):
        """Между соседними корнями и концами отрезка знак P_N чередуется."""
        roots = legendre_roots(N)
        probes = np.concatenate([[-1.0], (roots[:-1] + roots[1:]) / 2, [1.0]])
        p, _ = legendre_value_and_derivative(N, probes)
        assert np.all(np.sign(p[:-1]) * np.sign(p[1:]) < 0)

    def test_matches_numpy_leggauss(self):
        nodes, _ = npleg.leggauss(24)
        np.testing.assert_allclose(legendre_roots(24), nodes, atol=1e-14)

    def test_rejects_zero_order(self):
        with pytest.raises(DomainError):
            legendre_roots(0)


class TestChristoffelNumbers:
    """Тесты christoffel_numbers и QuadratureRule."""

    def test_order_one(self):
        rule = christoffel_numbers(1)
        np.testing.assert_array_equal(rule.nodes, [0.0])
        assert rule.weights[0] == pytest.approx(2.0, abs=1e-15)

    def test_order_two(self):
        np.testing.assert_allclose(christoffel_numbers(2).weights, [1.0, 1.0], atol=1e-14)

    def test_order_three(self):
        np.testing.assert_allclose(
            christoffel_numbers(3).weights, [5 / 9, 8 / 9, 5 / 9], atol=1e-13
        )

    @pytest.mark.parametrize("N", [1, 2, 5, 13, 32])
    def test_invariants(self, N):
        """Сумма весов 2, веса положительны и симметричны."""
        rule = christoffel_numbers(N)
        assert math.fsum(rule.weights) == pytest.approx(2.0, abs=1e-13)
        assert np.all(rule.weights > 0)
        np.testing.assert_allclose(rule.weights, rule.weights[::-1], atol=1e-13)

    @pytest.mark.parametrize("N", [1, 2, 3, 5, 8, 16, 32])
    def test_exact_on_monomials(self, N):
        """Σ A_k λ_k^d = ∫ x^d dx для всех d <= 2N-1."""
        rule = christoffel_numbers(N)
        for d in range(2 * N):
            exact = 0.0 if d % 2 else 2.0 / (d + 1)
            assert rule.integrate(rule.nodes**d) == pytest.approx(exact, abs=1e-11)

    def test_matches_numpy_weights(self):
        _, weights = npleg.leggauss(20)
        np.testing.assert_allclose(christoffel_numbers(20).weights, weights, atol=1e-13)

    @pytest.mark.parametrize("N", [2, 3, 6, 12])
    def test_weights_are_integrals_of_fundamental_polynomials(self, N):
        """A_k = ∫ l_k^N dx, интеграл составными панелями Гаусса."""
        rule = christoffel_numbers(N)
        panel_x, panel_w = npleg.leggauss(10)
        edges = np.linspace(-1.0, 1.0, 9)
        for k in range(1, N + 1):
            total = 0.0
            for a, b in zip(edges[:-1], edges[1:]):
                x = (b - a) / 2 * panel_x + (a + b) / 2
                total += (b - a) / 2 * float(np.sum(panel_w * lagrange_fundamental(rule, k, x)))
            assert total == pytest.approx(rule.weights[k - 1], abs=1e-10)

    def test_rule_arrays_are_read_only(self):
        rule = christoffel_numbers(4)
        with pytest.raises(ValueError):
            rule.nodes[0] = 0.0

    def test_rule_rejects_wrong_lengths(self):
        with pytest.raises(DomainError, match="needs 3"):
            QuadratureRule(order=3, nodes=np.zeros(2), weights=np.ones(3))

    @pytest.mark.parametrize(
        "nodes, weights, message",
        [
            ([0.5, -0.5], [1.0, 1.0], "ascending"),
            ([0.0, 0.0], [1.0, 1.0], "ascending"),
            ([-1.0, 0.5], [1.0, 1.0], "inside"),
            ([-0.5, 1.5], [1.0, 1.0], "inside"),
            ([-0.5, 0.5], [1.0, 0.0], "positive"),
            ([-0.5, 0.5], [-1.0, 3.0], "positive"),
        ],
    )
    def test_rule_rejects_invalid_nodes_and_weights(self, nodes, weights, message):
        """Узлы строго возрастают внутри (-1, 1), веса положительны."""
        with pytest.raises(DomainError, match=message):
            QuadratureRule(order=2, nodes=np.array(nodes), weights=np.array(weights))

    def test_rule_accepts_direct_construction(self):
        rule = christoffel_numbers(3)
        copy = QuadratureRule(order=3, nodes=rule.nodes, weights=rule.weights)
        np.testing.assert_array_equal(copy.nodes, rule.nodes)


class TestLagrangeFundamental:
    """Тесты lagrange_fundamental."""

    def test_cardinal_property(self):
        rule = christoffel_numbers(2)
        assert lagrange_fundamental(rule, 1, rule.nodes[0]) == pytest.approx(1.0)
        assert lagrange_fundamental(rule, 1, rule.nodes[1]) == pytest.approx(0.0, abs=1e-15)

    def test_product_formula(self):
        """l_2^3(0.5) по формуле произведения."""
        rule = christoffel_numbers(3)
        l1, l2, l3 = rule.nodes
        expected = (0.5 - l1) * (0.5 - l3) / ((l2 - l1) * (l2 - l3))
        assert lagrange_fundamental(rule, 2, 0.5) == pytest.approx(expected, rel=1e-14)

    def test_index_out_of_range(self):
        with pytest.raises(DomainError, match="outside 1..3"):
            lagrange_fundamental(christoffel_numbers(3), 4, 0.0)


# ──────────────────────────────────────────────
#  Присоединённые функции Лежандра
# ──────────────────────────────────────────────


class TestAssocLegendreSchmidt:
    """Тесты assoc_legendre_schmidt и assoc_legendre_table."""

    def test_zonal_degree_one(self):
        """P̄_1^0 = x."""
        assert assoc_legendre_schmidt(1, 0, 0.5) == pytest.approx(0.5, abs=1e-15)

    def test_sectoral_degree_one(self):
        """P̄_1^1 = sqrt(1/2) sqrt(1 - x^2), так что ∫(P̄_1^1)^2 = 2/3."""
        assert assoc_legendre_schmidt(1, 1, 0.0) == pytest.approx(math.sqrt(0.5), abs=1e-15)
        rule = christoffel_numbers(4)
        values = assoc_legendre_schmidt(1, 1, rule.nodes)
        assert rule.integrate(values**2) == pytest.approx(2 / 3, abs=1e-14)

    def test_high_sectoral_against_extended_precision(self):
        """P̄_60^60(0.3) против 50-значной арифметики."""
        with mpmath.workdps(50):
            x = mpmath.mpf("0.3")
            oracle = (
                mpmath.fac2(119)
                * mpmath.sqrt(1 - x * x) ** 60
                / mpmath.sqrt(mpmath.factorial(120))
            )
            oracle = float(oracle)
        value = assoc_legendre_schmidt(60, 60, 0.3)
        assert value != 0.0 and math.isfinite(value)
        assert value == pytest.approx(oracle, rel=1e-10)

    @pytest.mark.parametrize("n,k,x", [(7, 3, 0.41), (30, 7, -0.62), (25, 0, 0.9)])
    def test_against_mpmath_legenp(self, n, k, x):
        """|P̄_n^k| совпадает с sqrt((n-k)!/(n+k)!)|P_n^k| из mpmath."""
        with mpmath.workdps(40):
            scale = mpmath.sqrt(mpmath.factorial(n - k) / mpmath.factorial(n + k))
            oracle = abs(float(scale * mpmath.legenp(n, k, x)))
        assert abs(assoc_legendre_schmidt(n, k, x)) == pytest.approx(oracle, rel=1e-10, abs=1e-14)

    @pytest.mark.parametrize("n", [0, 3, 9, 20])
    def test_normalization(self, n):
        """∫ (P̄_n^k)^2 dx = 2/(2n+1) для всех k <= n."""
        rule = christoffel_numbers(32)
        for k in range(n + 1):
            values = assoc_legendre_schmidt(n, k, rule.nodes)
            assert rule.integrate(values**2) == pytest.approx(2 / (2 * n + 1), abs=1e-10)

    def test_table_matches_pointwise(self):
        x = np.linspace(-0.95, 0.95, 7)
        table = assoc_legendre_table(9, x)
        for n in range(9):
            for k in range(n + 1):
                np.testing.assert_allclose(
                    table[n, k], assoc_legendre_schmidt(n, k, x), atol=1e-14
                )
            assert np.all(table[n, n + 1 :] == 0.0)

    @pytest.mark.parametrize("n,k", [(2, 3), (-1, 0), (3, -1)])
    def test_invalid_index(self, n, k):
        with pytest.raises(DomainError, match="invalid"):
            assoc_legendre_schmidt(n, k, 0.1)

    def test_outside_domain(self):
        with pytest.raises(DomainError):
            assoc_legendre_schmidt(2, 1, -1.01)

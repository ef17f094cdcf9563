import numpy as np
import pytest

from pocket_kirch import (
    PocketSpec,
    build_pocket_graph,
    complete_graph,
    empty_graph,
    invert,
    is_one_inverse,
    join,
    kron,
    laplacian,
    one_inverse_lemma26,
    oracle_resistance,
    path_graph,
    pocket_d_inverse,
    resistance_matrix,
    split_base_join,
    structured_one_inverse,
    theorem3_one_inverse,
    theorem4_one_inverse,
)
from pocket_kirch.oneinv import _p_factor, _q_factor
from pocket_kirch.sweep import random_specs


class TestLemma26:
    def test_p3_partition_1_2(self):
        a = np.array([[1.0]])
        b = np.array([[-1.0, 0.0]])
        d = np.array([[2.0, -1.0], [-1.0, 1.0]])
        out = one_inverse_lemma26(a, b, d)
        np.testing.assert_allclose(out, [[0, 0, 0], [0, 1, 1], [0, 1, 2]], atol=1e-12)

    def test_k2_partition_1_1(self):
        out = one_inverse_lemma26([[1.0]], [[-1.0]], [[1.0]])
        np.testing.assert_allclose(out, [[0, 0], [0, 1]], atol=1e-12)

    @pytest.mark.parametrize("g", [path_graph(4), complete_graph(5), join(path_graph(2), empty_graph(3))])
    @pytest.mark.parametrize("split", [1, 2])
    def test_defining_property(self, g, split):
        lap = laplacian(g)
        out = one_inverse_lemma26(lap[:split, :split], lap[:split, split:], lap[split:, split:])
        assert is_one_inverse(lap, out, 1e-9)
        np.testing.assert_allclose(out, out.T, atol=1e-12)


class TestPocketDInverse:
    def test_p3_instance_blocks(self):
        p_inv, q_inv, coupling = pocket_d_inverse(complete_graph(1), complete_graph(1), 1)
        np.testing.assert_allclose(p_inv, [[1.0]])
        np.testing.assert_allclose(q_inv, [[2.0]])
        np.testing.assert_allclose(coupling, [[1.0]])

    def test_empty_h2(self):
        p_inv, q_inv, coupling = pocket_d_inverse(complete_graph(1), empty_graph(0), 2)
        np.testing.assert_allclose(p_inv, np.eye(2))
        assert q_inv.shape == (0, 0)
        assert coupling.shape == (2, 0)

    @pytest.mark.parametrize(
        "h1,h2,copies",
        [
            (complete_graph(1), complete_graph(1), 1),
            (complete_graph(2), path_graph(3), 2),
            (path_graph(3), empty_graph(2), 3),
            (empty_graph(2), complete_graph(3), 2),
        ],
    )
    def test_matches_direct_inverse_of_d(self, h1, h2, copies):
        l, m = h1.order, h1.order + h2.order
        eye = np.eye(copies)
        d = np.block(
            [
                [
                    kron(laplacian(h1) + (m - l + 1) * np.eye(l), eye),
                    kron(-np.ones((l, m - l)), eye),
                ],
                [
                    kron(-np.ones((m - l, l)), eye),
                    kron(laplacian(h2) + l * np.eye(m - l), eye),
                ],
            ]
        )
        p_inv, q_inv, coupling = pocket_d_inverse(h1, h2, copies)
        assembled = np.block([[p_inv, coupling], [coupling.T, q_inv]])
        np.testing.assert_allclose(assembled, invert(d), atol=1e-9)


THM3_SPECS = [
    PocketSpec(complete_graph(1), (0,), complete_graph(1), complete_graph(1)),
    PocketSpec(complete_graph(2), (0, 1), complete_graph(1)),
    PocketSpec(path_graph(3), (1, 2, 0), complete_graph(2), path_graph(2)),
    PocketSpec(complete_graph(4), (0, 1, 2, 3), path_graph(3), empty_graph(2)),
]

THM4_ARGS = [
    (complete_graph(1), complete_graph(1), complete_graph(1), empty_graph(0)),
    (complete_graph(2), complete_graph(1), complete_graph(1), complete_graph(1)),
    (complete_graph(2), empty_graph(2), complete_graph(2), complete_graph(2)),
    (path_graph(3), complete_graph(1), path_graph(2), path_graph(3)),
]


class TestTheorem3:
    def test_p3_exact(self):
        s = theorem3_one_inverse(THM3_SPECS[0])
        np.testing.assert_allclose(
            s.matrix, [[0, 0, 0], [0, 1, 1], [0, 1, 2]], atol=1e-12
        )

    def test_p4_is_one_inverse(self):
        spec = THM3_SPECS[1]
        g, _ = build_pocket_graph(spec)
        s = theorem3_one_inverse(spec)
        assert s.matrix.shape == (4, 4)
        assert is_one_inverse(laplacian(g), s.matrix, 1e-9)

    @pytest.mark.parametrize("spec", THM3_SPECS)
    def test_symmetric_and_one_inverse(self, spec):
        g, _ = build_pocket_graph(spec)
        s = theorem3_one_inverse(spec)
        np.testing.assert_allclose(s.matrix, s.matrix.T, atol=1e-12)
        assert is_one_inverse(laplacian(g), s.matrix, 1e-9)

    def test_rejects_partial_attachment(self):
        spec = PocketSpec(complete_graph(2), (0,), complete_graph(1))
        with pytest.raises(ValueError, match="k = n"):
            theorem3_one_inverse(spec)

    @pytest.mark.parametrize("spec", THM3_SPECS)
    def test_schur_identity_h_equals_lf(self, spec):
        # A - B D^-1 B^T reduces to the base Laplacian
        g, layout = build_pocket_graph(spec)
        lap = laplacian(g)
        perm = layout.to_global()
        lap_b = lap[np.ix_(perm, perm)]
        n = spec.n
        a, b, d = lap_b[:n, :n], lap_b[:n, n:], lap_b[n:, n:]
        h = a - b @ invert(d) @ b.T
        lf = laplacian(spec.F)[np.ix_(layout.f_order, layout.f_order)]
        assert np.abs(h - lf).max() <= 1e-10


class TestTheorem4:
    def test_pendant_exact(self):
        s = theorem4_one_inverse(*THM4_ARGS[0])
        np.testing.assert_allclose(s.matrix, np.diag([0.0, 1.0, 1.0]), atol=1e-12)

    def test_seven_vertex_oracle_match(self):
        f1, f2, h1, h2 = THM4_ARGS[1]
        s = theorem4_one_inverse(f1, f2, h1, h2)
        assert s.matrix.shape == (7, 7)  # n + m*k = 3 + 2*2
        spec = PocketSpec(join(f1, f2), tuple(range(f1.order)), h1, h2)
        g, _ = build_pocket_graph(spec)
        r_oracle, _ = oracle_resistance(g)
        np.testing.assert_allclose(resistance_matrix(s.matrix), r_oracle, atol=1e-9)

    @pytest.mark.parametrize("args", THM4_ARGS)
    def test_symmetric_and_one_inverse(self, args):
        f1, f2, h1, h2 = args
        s = theorem4_one_inverse(f1, f2, h1, h2)
        spec = PocketSpec(join(f1, f2), tuple(range(f1.order)), h1, h2)
        g, _ = build_pocket_graph(spec)
        np.testing.assert_allclose(s.matrix, s.matrix.T, atol=1e-12)
        assert is_one_inverse(laplacian(g), s.matrix, 1e-9)

    def test_rejects_empty_f2(self):
        with pytest.raises(ValueError, match="F2"):
            theorem4_one_inverse(complete_graph(2), empty_graph(0), complete_graph(1), empty_graph(0))

    @pytest.mark.parametrize("args", THM4_ARGS)
    def test_schur_identity_shifted_base(self, args):
        # A - B D^-1 B^T reduces to L(F1) + (n-k)I - ((n-k)/k) J
        f1, f2, h1, h2 = args
        k, n = f1.order, f1.order + f2.order
        spec = PocketSpec(join(f1, f2), tuple(range(k)), h1, h2)
        g, layout = build_pocket_graph(spec)
        lap = laplacian(g)
        perm = layout.to_global()
        lap_b = lap[np.ix_(perm, perm)]
        a, b, d = lap_b[:k, :k], lap_b[:k, k:], lap_b[k:, k:]
        h = a - b @ invert(d) @ b.T
        expected = (
            laplacian(f1) + (n - k) * np.eye(k) - ((n - k) / k) * np.ones((k, k))
        )
        assert np.abs(h - expected).max() <= 1e-10


class TestStructuredDispatch:
    def test_split_base_join_detects_missing_cross_edge(self):
        spec = PocketSpec(path_graph(3), (0,), complete_graph(1))
        with pytest.raises(ValueError, match="cross edge"):
            split_base_join(spec)

    def test_split_base_join_splits(self):
        spec = PocketSpec(join(complete_graph(2), path_graph(2)), (0, 1), complete_graph(1))
        f1, f2 = split_base_join(spec)
        assert f1 == complete_graph(2)
        assert f2 == path_graph(2)

    def test_shuffled_attach_list_realigns(self):
        # attachment vertices out of order; N must still be a {1}-inverse
        # in the spec's own global indexing
        f = join(complete_graph(2), empty_graph(2))
        spec = PocketSpec(f, (1, 0), complete_graph(1), complete_graph(1))
        g, _ = build_pocket_graph(spec)
        s = structured_one_inverse(spec)
        assert is_one_inverse(laplacian(g), s.matrix, 1e-9)

    @pytest.mark.parametrize("i", range(0, 40, 7))
    def test_random_specs_one_inverse_law(self, i):
        spec = random_specs(40, seed=7)[i]
        g, _ = build_pocket_graph(spec)
        s = structured_one_inverse(spec)
        lap = laplacian(g)
        assert np.abs(lap @ s.matrix @ lap - lap).max() <= 1e-9
        r_oracle, _ = oracle_resistance(g)
        np.testing.assert_allclose(resistance_matrix(s.matrix), r_oracle, atol=1e-9)


class TestIngredients:
    def test_factors_retained_for_audit(self):
        spec = THM3_SPECS[2]
        s = theorem3_one_inverse(spec)
        assert "base_sharp" in s.ingredients
        np.testing.assert_allclose(
            s.ingredients["p_inv_factor"], invert(_p_factor(spec.H1, spec.m))
        )
        np.testing.assert_allclose(
            s.ingredients["q_inv_factor"], invert(_q_factor(spec.H2, spec.l, spec.m))
        )

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from behavnet.behavior import KernelRep, SignalSpace, is_behavior_equal
from behavnet.generate import random_regular_feedback_network, random_svar, random_unimodular
from behavnet.network import Network, column_incidence, incidence, interconnect, regularity
from behavnet.polyalg import DimensionError, PolyMatrix, S, sparsity
from behavnet.svar import (
    ComponentCardinalityError,
    DiagonalLeadingError,
    InputDegreeError,
    NotRegularFeedbackError,
    SingularLeadingError,
    from_network,
    to_network,
    validate,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def unpermute(net: Network, model, perm) -> KernelRep:
    """The recovered [X -Q] with columns put back into the network's order."""
    k = model.kernel_matrix()
    rows = [[None] * net.space.q for _ in range(k.rows)]
    for pos, col in enumerate(perm):
        for i in range(k.rows):
            rows[i][col] = k[i, pos]
    return KernelRep(net.space, PolyMatrix.from_rows(rows, net.space.q))


def shuffled(rng: random.Random, net: Network) -> Network:
    """Same network with signal columns and component order shuffled."""
    order = list(range(net.space.q))
    rng.shuffle(order)
    names = net.space.column_names()
    space = SignalSpace.scalars([names[c] for c in order])
    comps = [KernelRep(space, c.r.submatrix(None, order)) for c in net.components]
    idx = list(range(len(comps)))
    rng.shuffle(idx)
    return Network(space, tuple(comps[i] for i in idx), tuple(net.names[i] for i in idx))


class TestValidate:
    def test_svar3(self, svar3):
        assert svar3.lags == (1, 1, 1)
        assert svar3.output_names == ("y1", "y2", "y3")

    def test_non_monic_diagonal(self):
        with pytest.raises(DiagonalLeadingError):
            validate(PolyMatrix.from_rows([[2 * S]]), PolyMatrix.zeros(1, 0))

    def test_zero_row(self):
        with pytest.raises(DiagonalLeadingError):
            validate(PolyMatrix.from_rows([[S, 0], [0, 0]]), PolyMatrix.zeros(2, 1))

    def test_singular_leading(self):
        with pytest.raises(SingularLeadingError):
            validate(PolyMatrix.from_rows([[S, S], [S, S]]), PolyMatrix.zeros(2, 1))

    def test_input_degree(self):
        with pytest.raises(InputDegreeError):
            validate(PolyMatrix.from_rows([[S]]), PolyMatrix.from_rows([[S * S]]))

    def test_shapes(self):
        with pytest.raises(DimensionError):
            validate(PolyMatrix.from_rows([[S, 0]]), PolyMatrix.zeros(1, 1))

    def test_static_lag_zero(self):
        m = validate(PolyMatrix.from_rows([[1, "1/2"], [0, 1]]), PolyMatrix.from_rows([[1], [2]]))
        assert m.lags == (0, 0)


class TestToNetwork:
    def test_svar3_incidence(self, svar3):
        net = to_network(svar3)
        assert incidence(net).to_lists() == [[1, 1, 0, 1], [1, 1, 0, 0], [0, 0, 1, 1]]

    def test_vector_input_block(self):
        m = validate(PolyMatrix.from_rows([[S]]), PolyMatrix.from_rows([[1, 0]]))
        net = to_network(m)
        assert net.space.blocks == (("y1", 1), ("u", 2))
        assert to_network(m, split_inputs=True).space.names == ["y1", "u1", "u2"]

    def test_signal_names(self, svar3):
        net = to_network(svar3, ["a", "b", "c", "d"])
        assert net.space.names == ["a", "b", "c", "d"]
        with pytest.raises(ValueError):
            to_network(svar3, ["a"])

    def test_svar3_regular_feedback(self, svar3):
        rep = regularity(to_network(svar3))
        assert rep.regular_feedback and rep.p == 3 and rep.n == 3

    @given(seeds)
    def test_regular_feedback_invariants(self, seed):
        model = random_svar(random.Random(seed))
        rep = regularity(to_network(model))
        assert rep.regular_feedback
        assert rep.p == model.n_outputs
        assert rep.n == sum(model.lags)
        assert rep.component_p == (1,) * model.n_outputs


class TestFromNetwork:
    def test_circuit_rejected(self, circuit):
        with pytest.raises(NotRegularFeedbackError, match="not a regular feedback interconnection"):
            from_network(circuit)

    def test_multi_output_component_rejected(self):
        space = SignalSpace.scalars(["a", "b"])
        net = Network(space, (KernelRep(space, PolyMatrix.identity(2)),))
        with pytest.raises(ComponentCardinalityError):
            from_network(net)

    def test_svar3_round_trip(self, svar3):
        net = to_network(svar3)
        model, perm = from_network(net)
        assert perm == [0, 1, 2, 3]
        assert model.x == svar3.x and model.q == svar3.q

    def test_scaled_components(self):
        # 2 y(t+1) + y(t) = u(t) is accepted and rescaled to a monic diagonal
        space = SignalSpace.scalars(["y", "u"])
        net = Network(space, (KernelRep.from_rows(space, [[2 * S + 1, -1]]),))
        model, perm = from_network(net)
        assert model.x == PolyMatrix.from_rows([[S + Fraction(1, 2)]])
        assert model.q == PolyMatrix.from_rows([["1/2"]])
        assert perm == [0, 1]

    @given(seeds)
    def test_round_trip_shuffled(self, seed):
        rng = random.Random(seed)
        original = random_svar(rng)
        net = shuffled(rng, to_network(original, split_inputs=True))
        model, perm = from_network(net)
        assert validate(model.x, model.q) is not None
        s_cols = column_incidence(net)
        assert sparsity(model.kernel_matrix()) == [[row[c] for c in perm] for row in s_cols]
        assert is_behavior_equal(unpermute(net, model, perm), interconnect(net))

    @given(seeds)
    def test_scrambled_regular_feedback_networks(self, seed):
        net = random_regular_feedback_network(random.Random(seed))
        if any(c.r.rows != 1 for c in net.components):
            return
        model, perm = from_network(net)
        assert sorted(perm) == list(range(net.space.q))
        assert is_behavior_equal(unpermute(net, model, perm), interconnect(net))

    @given(seeds)
    def test_componentwise_representation_free(self, seed):
        rng = random.Random(seed)
        net = to_network(random_svar(rng), split_inputs=True)
        scaled = Network(
            net.space,
            tuple(KernelRep(net.space, random_unimodular(rng, 1).u @ c.r) for c in net.components),
        )
        model, perm = from_network(scaled)
        assert is_behavior_equal(unpermute(net, model, perm), interconnect(net))

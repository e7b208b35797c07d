import random
from collections import Counter

import pytest
from scipy.stats import chisquare

from cnozk.errors import NotColorable
from cnozk.instances import (K3, ColoringProtocol, DlogInstance, DlogSigma, Graph, complete_graph, dlog_keygen,
                             dumps_coloring, loads_coloring, near_coloring, random_colorable_graph)
from cnozk.sigma import p_triv_exhaustive


def test_graph_normalization_and_formats():
    g = Graph(4, ((1, 0), (2, 3), (0, 1)))
    assert g.edges == ((0, 1), (2, 3))
    assert Graph.loads(g.dumps()) == g
    assert Graph.from_bytes(g.to_bytes()) == g
    with pytest.raises(ValueError):
        Graph(3, ((0, 0),))
    with pytest.raises(ValueError):
        Graph(65, ())
    with pytest.raises(ValueError):
        Graph.loads("3 2\n0 1\n")
    assert loads_coloring(dumps_coloring((0, 2, 1))) == (0, 2, 1)


def test_k3_protocol():
    P = ColoringProtocol(K3)
    rng = random.Random(0)
    msgs, a0 = P.honest_messages(K3, (0, 1, 2), rng)
    assert all(P.accepts_opening(K3, k, msgs, a0) for k in range(3))
    assert p_triv_exhaustive(P.system) == pytest.approx(2 / 3)
    with pytest.raises(NotColorable):
        P.honest_messages(K3, (0, 0, 1), rng)


def test_attack_hook():
    g, _ = random_colorable_graph(6, random.Random(3))
    P = ColoringProtocol(g)
    msgs, s_hat, a0 = P.attack_messages(g, random.Random(1))
    assert len(s_hat) == len(g.edges) - 1
    for k in range(P.space.size):
        assert P.accepts_opening(g, k, msgs, a0) == (k in s_hat)
    col = near_coloring(complete_graph(4))
    assert len(complete_graph(4).proper_edges(col)) == 5


def test_hiding_chi2():
    # opened endpoint colors of a fixed edge are uniform over the 6 ordered distinct pairs
    P = ColoringProtocol(K3)
    rng = random.Random(21)
    counts = Counter()
    for _ in range(10 ** 4):
        msgs, _ = P.honest_messages(K3, (0, 1, 2), rng)
        counts[(msgs[0][0], msgs[1][0])] += 1
    assert len(counts) == 6 and all(a != b for a, b in counts)
    assert chisquare(list(counts.values())).pvalue > 1e-4


def test_dlog_group_parameters():
    inst, w = dlog_keygen(random.Random(1))
    assert inst.check()
    assert (inst.p - 1) // 2 == inst.q
    assert DlogInstance.loads(inst.dumps()) == inst
    assert DlogInstance.from_bytes(inst.to_bytes()) == inst


def test_dlog_sigma():
    rng = random.Random(2)
    inst, w = dlog_keygen(rng)
    s = DlogSigma()
    a0, state = s.first_message(inst, w, rng)
    z0, z1 = s.respond(state, 0), s.respond(state, 1)
    assert s.verify(inst, a0, 0, z0) and s.verify(inst, a0, 1, z1)
    got = s.extract(inst, a0, {0, 1}, {0: z0, 1: z1})
    assert pow(inst.g, got, inst.p) == inst.X
    a0f, zf = s.forge(inst, 0, rng)
    assert s.verify(inst, a0f, 0, zf) and not s.verify(inst, a0f, 1, zf)

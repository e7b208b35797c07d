import random

from cnozk.fs import MERKLE, ORDINARY, NizkProof
from cnozk.instances import DlogSigma
from cnozk.rom import HashOracle
from cnozk.unruh import pre_unruh, pu_extract_star, unruh_prove, unruh_scheme, unruh_verify


def test_pre_unruh_shape(dlog):
    inst, w = dlog
    P = pre_unruh(DlogSigma())
    assert P.ell == 2 and P.kappa == 1
    assert [P.space.unrank(k) for k in range(2)] == [(0,), (1,)]
    o = HashOracle(64)
    s = unruh_scheme(DlogSigma(), 1)
    proof = s.prove(o, inst, w, random.Random(1))
    assert len(proof.opened) == 1 and len(proof.commitment) == 2


def test_pu_extract_star(dlog):
    inst, w = dlog
    P = pre_unruh(DlogSigma())
    msgs, a0 = P.honest_messages(inst, w, random.Random(3))
    assert pu_extract_star(P, inst, msgs, a0) == w
    forged, s_hat, a0f = P.attack_messages(inst, random.Random(4))
    assert len(s_hat) == 1
    assert pu_extract_star(P, inst, forged, a0f) is None


def test_membership_test_budget(dlog):
    inst, w = dlog
    P = pre_unruh(DlogSigma())
    msgs, a0 = P.honest_messages(inst, w, random.Random(3))
    P.system.membership_tests = 0
    P.verify_calls = 0
    assert P.extract_star(inst, msgs, a0) == w
    ell = P.ell
    assert P.verify_calls <= ell
    assert P.system.membership_tests <= ell * (ell + 1) // 2


def test_unruh_and_mppu(dlog):
    inst, w = dlog
    o = HashOracle(256)
    sizes = {}
    for merkle in (False, True):
        proof = unruh_prove(o, DlogSigma(), 20, inst, w, random.Random(5), merkle=merkle)
        assert unruh_verify(o, DlogSigma(), 20, inst, proof, merkle=merkle)
        data = proof.to_bytes()
        sizes[merkle] = len(data)
        parsed = NizkProof.from_bytes(data, 32)
        assert len(parsed.opened) == 20
        if not merkle:
            opened = {i for i, _ in parsed.opened}
            assert len(parsed.commitment) - len(opened) == 20
    assert sizes[True] < sizes[False]

"""Pre-Unruh transformation and the composed Unruh / Merkle-Unruh proofs.

``pU[sigma]`` commits to the response for every challenge of a plain sigma
protocol and opens the one that is asked for. Repeating it r times and
applying Fiat-Shamir gives ``Unr_r`` (ordinary commitments) or ``MPpU_r``
(one Merkle root over all r * ell0 responses).
"""

from .challenges import SingletonSpace
from .cno import CnOProtocol, parallel_repeat
from .errors import ChallengeSpaceTooLarge
from .fs import MERKLE, ORDINARY, FiatShamir
from .sigma import SigmaProtocol, extract_sigma

MAX_SIGMA_CHALLENGES = 1 << 16


class PreUnruh(CnOProtocol):
    def __init__(self, sigma: SigmaProtocol):
        if sigma.challenge_count > MAX_SIGMA_CHALLENGES:
            raise ChallengeSpaceTooLarge(f"{sigma.challenge_count} challenges is too many to commit to")
        self.sigma = sigma
        self.ell = sigma.challenge_count
        self.space = SingletonSpace(self.ell)
        self.system = sigma.system
        self.a0_len = sigma.a0_len
        self.verify_calls = 0

    def honest_messages(self, inst, witness, rng):
        # every response comes from the same first-message state
        a0, state = self.sigma.first_message(inst, witness, rng)
        return [self.sigma.respond(state, c) for c in range(self.ell)], a0

    def predicate(self, inst, k, m_c, a0):
        self.verify_calls += 1
        return len(m_c) == 1 and self.sigma.verify(inst, a0, k, m_c[0])

    def extract(self, inst, a0, s, messages):
        return pu_extract(self, inst, messages, a0, s)

    def extract_star(self, inst, messages, a0):
        return pu_extract_star(self, inst, messages, a0)

    def relation(self, inst, witness):
        return self.sigma.relation(inst, witness)

    def encode_instance(self, inst):
        return self.sigma.encode_instance(inst)

    def decode_instance(self, data):
        return self.sigma.decode_instance(data)

    def attack_messages(self, inst, rng, c=None):
        """Trivial attack: a valid response for one challenge, junk for the rest."""
        if c is None:
            c = rng.randrange(self.ell)
        a0, z = self.sigma.forge(inst, c, rng)
        msgs = [z if i == c else rng.randbytes(len(z)) for i in range(self.ell)]
        return msgs, frozenset({c}), a0


def pre_unruh(sigma: SigmaProtocol) -> PreUnruh:
    return PreUnruh(sigma)


def pu_extract(protocol: PreUnruh, inst, messages, a0, s, assume_minimal=False):
    """Run the sigma extractor on the opened responses for the challenges in ``s``."""
    responses = {c: messages[c] for c in s if messages[c] is not None}
    if len(responses) != len(s):
        return None
    return extract_sigma(protocol.sigma, inst, a0, s, responses, assume_minimal)


def pu_extract_star(protocol: PreUnruh, inst, messages, a0):
    """Check every committed response, shrink the valid set to a minimal one, extract."""
    s_hat = frozenset(c for c in range(protocol.ell)
                      if messages[c] is not None and protocol.predicate(inst, c, (messages[c],), a0))
    s = protocol.system.shrink(s_hat)
    if s is None:
        return None
    return pu_extract(protocol, inst, messages, a0, s, assume_minimal=True)


def unruh_scheme(sigma, r, merkle=False) -> FiatShamir:
    return FiatShamir(parallel_repeat(pre_unruh(sigma), r), MERKLE if merkle else ORDINARY)


def unruh_prove(oracle, sigma, r, inst, witness, rng, merkle=False, msg=None):
    return unruh_scheme(sigma, r, merkle).prove(oracle, inst, witness, rng, msg=msg)


def unruh_verify(oracle, sigma, r, inst, proof, merkle=False, msg=None) -> bool:
    return unruh_scheme(sigma, r, merkle).verify(oracle, inst, proof, msg=msg)

"""The eight proof algorithm names and their co-algorithms."""

from enum import Enum


class Alg(Enum):
    PHI = "phi"
    PI = "pi"
    PSI = "psi"
    THETA = "theta"
    THETAP = "thetap"
    BETA = "beta"
    PSIP = "psip"
    PIP = "pip"

    @property
    def co(self) -> "Alg":
        return _CO[self]

    @property
    def symbol(self) -> str:
        return _SYMBOL[self]

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, name: str) -> "Alg":
        key = name.strip().lower()
        for a in cls:
            if key in (a.value, a.symbol):
                return a
        raise ValueError("unknown proof algorithm %r (expected one of %s)"
                         % (name, ", ".join(a.value for a in cls)))


_CO = {
    Alg.PHI: Alg.PHI,
    Alg.BETA: Alg.BETA,
    Alg.PI: Alg.PIP,
    Alg.PIP: Alg.PI,
    Alg.PSI: Alg.PSIP,
    Alg.PSIP: Alg.PSI,
    Alg.THETA: Alg.THETAP,
    Alg.THETAP: Alg.THETA,
}

_SYMBOL = {
    Alg.PHI: "φ",
    Alg.PI: "π",
    Alg.PSI: "ψ",
    Alg.THETA: "θ",
    Alg.THETAP: "θ′",
    Alg.BETA: "β",
    Alg.PSIP: "ψ′",
    Alg.PIP: "π′",
}

# weakest (most cautious) first
HIERARCHY = (Alg.PHI, Alg.PI, Alg.PSI, Alg.THETA, Alg.THETAP, Alg.BETA, Alg.PSIP, Alg.PIP)

NON_PRIMED = frozenset({Alg.PHI, Alg.PI, Alg.PSI, Alg.THETA, Alg.THETAP, Alg.BETA})


def co_algorithm(alg: Alg) -> Alg:
    return alg.co

"""Reference signatures used by the tests, the CLI fixtures and the scripts.

DESK-1 (n=2, m=5): phi = e1^e2, characters read coordinates 3, 5, 4 and the
fourth one vanishes; sigma_3 = e4, eps = e3.

DESK-2 (n=2, m=6, every slot POINT): all four characters must be nonzero on
the radical and separate it, which needs a radical of rank >= 4, hence m=6.
The characters are chosen so that sigma = sigma_3 - 2 eps = -e3 - e4 sits
inside the unit box.

ALL-NAT: DESK-1 data with every slot NAT.
"""

from __future__ import annotations

from .lattice import AlgebraSignature, Character, ModuleSignature, SemigroupMask, SkewForm


def desk1(mask: str = "NNPN") -> AlgebraSignature:
    return AlgebraSignature(
        n=2,
        m=5,
        phi=SkewForm.standard_pair(5),
        chars=(
            Character((0, 0, 1, 0, 0)),
            Character((0, 0, 0, 0, 1)),
            Character((0, 0, 0, 1, 0)),
            Character((0, 0, 0, 0, 0)),
        ),
        mask=SemigroupMask.of(mask),
        sigmas=((0, 0, 0, 1, 0),),
        epsilon=(0, 0, 1, 0, 0),
    )


def desk2() -> AlgebraSignature:
    return AlgebraSignature(
        n=2,
        m=6,
        phi=SkewForm.standard_pair(6),
        chars=(
            Character((0, 0, 1, 1, 0, 0)),
            Character((0, 0, 0, 0, 1, 0)),
            Character((0, 0, 0, 1, 0, 0)),
            Character((0, 0, 0, 0, 0, 1)),
        ),
        mask=SemigroupMask.of("PPPP"),
        sigmas=((0, 0, 1, -1, 0, 0),),
        epsilon=(0, 0, 1, 0, 0, 0),
    )


def all_nat() -> AlgebraSignature:
    return desk1("NNNN")


def adjoint_xi(n: int) -> tuple:
    """The parameter vector whose module is literally the adjoint action: (1, 0, ..., 0)."""
    return (1,) + (0,) * (2 * n - 1)


def adjoint_module(sig: AlgebraSignature) -> ModuleSignature:
    return ModuleSignature(adjoint_xi(sig.n), Character.zero(sig.m))


def desk1_module_mu() -> ModuleSignature:
    """xi_p = phi_p(e1) and f = phi(., e1); solved by mu = e1."""
    return ModuleSignature((0, 0, 0, 0), Character((0, -1, 0, 0, 0)))


def desk1_module_irreducible() -> ModuleSignature:
    """xi = (0,0,0,1), f = 0: the vanishing fourth character rules out any mu."""
    return ModuleSignature((0, 0, 0, 1), Character.zero(5))


def desk1_module_rational() -> ModuleSignature:
    """A generic rational setting (no mu: xi_4 != 0)."""
    return ModuleSignature(("1/2", -3, "2/3", 5), Character((2, "-1/3", 0, 0, 0)))


INSTANCES = {"desk1": desk1, "desk2": desk2, "allnat": all_nat}

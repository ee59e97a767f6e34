import pytest

from koszulkit import GF, QQ, Ideal, parse_poly, parse_ring


@pytest.fixture(scope="session")
def F32003():
    return GF(32003)


def ring(decl):
    return parse_ring(decl)


def polys(R, *texts):
    return [parse_poly(R, t) for t in texts]


def ideal(R, *texts):
    return Ideal(polys(R, *texts), R)


@pytest.fixture
def qq_xy():
    return parse_ring("ring QQ [x,y]")


@pytest.fixture
def conca_ideal():
    R = parse_ring("ring F32003 [x,y,z,w]")
    return ideal(R, "x*y", "x*w", "(x-y)*z", "z^2", "x^2+z*w")


@pytest.fixture
def generic_one_syzygy():
    """The one-linear-syzygy height-two form with all witness forms as
    independent variables, plus its named pieces."""
    R = parse_ring("ring F32003 [a3,b3,b4,a4,x,y,z]")
    P = lambda s: parse_poly(R, s)
    gens = [P("x*z"), P("y*z"), P("a3*x+b3*y"), P("a4*x+b4*y")]
    return {
        "ring": R,
        "ideal": Ideal(gens, R),
        "q3": gens[2],
        "q4": gens[3],
        "delta": P("a3*b4-a4*b3"),
    }


@pytest.fixture
def bad_algebra_ideal():
    R = parse_ring("ring F32003 [x,y,a,b]")
    return ideal(R, "b*x", "x*y", "a*x-b*y", "x^2-y^2")

import numpy as np
import pytest

from hadlab import matcore

# Frozen reference displays for the first Walsh matrices.
W2_TEXT = "++\n+-"
W4_TEXT = "\n".join(
    [
        "++++",
        "+-+-",
        "++--",
        "+--+",
    ]
)
W8_TEXT = "\n".join(
    [
        "++++++++",
        "+-+-+-+-",
        "++--++--",
        "+--++--+",
        "++++----",
        "+-+--+-+",
        "++----++",
        "+--+-++-",
    ]
)


@pytest.fixture(scope="session")
def w2():
    return matcore.walsh(1)


@pytest.fixture(scope="session")
def w4():
    return matcore.walsh(2)


@pytest.fixture(scope="session")
def w8():
    return matcore.walsh(3)


@pytest.fixture(scope="session")
def w16():
    return matcore.walsh(4)


@pytest.fixture(scope="session")
def h12():
    return matcore.paley12()


def random_sign_matrix(rng, rows, cols=None):
    cols = rows if cols is None else cols
    return rng.choice(np.array([-1, 1], dtype=np.int64), size=(rows, cols))


def random_orthogonal(rng, n):
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    return q * np.sign(np.diag(r))

import pytest

from importlib import resources

from khss import build, compute, load_corpus

TREFOIL = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"
TREFOIL_RH = "PD[X(4,2,5,1),X(6,4,1,3),X(2,6,3,5)]"
FIGURE_EIGHT = "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]"
HOPF = "PD[X(1,3,2,4),X(3,1,4,2)]"


def corpus_path() -> str:
    return str(resources.files("khss") / "data" / "knots.csv")


class Store:
    """Session-wide cache of built complexes and spectral results."""

    def __init__(self):
        self.corpus = dict(load_corpus(corpus_path()))
        self._complexes = {}
        self._results = {}

    def complex(self, name: str, reduced: bool = True):
        key = (name, reduced)
        if key not in self._complexes:
            self._complexes[key] = build(self.corpus[name], reduced=reduced)
        return self._complexes[key]

    def result(self, name: str, reduced: bool = True):
        key = (name, reduced)
        if key not in self._results:
            self._results[key] = compute(self.complex(name, reduced))
        return self._results[key]

    def names(self, max_crossings: int = 99) -> list[str]:
        return [n for n, d in self.corpus.items()
                if len(d.crossings) <= max_crossings]


@pytest.fixture(scope="session")
def store() -> Store:
    return Store()

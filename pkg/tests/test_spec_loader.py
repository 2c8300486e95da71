from pathlib import Path

import pytest

from utils.spec_loader import SpecFileError, load_spec_file, load_spec_text, parse_spec_text

DATA = Path(__file__).resolve().parents[1] / "data"

ABELIAN = """
name: pair
generators: p q
weights: p=1 q=2
degree: 3

[relations]
[q, p] = 0
"""


def test_header_and_sections_are_split() -> None:
    header, sections = parse_spec_text(ABELIAN)
    assert header == {"name": "pair", "generators": ("p", "q"), "weights": {"p": 1, "q": 2}, "degree": 3}
    assert sections == {"relations": [(8, "[q, p] = 0")]}


def test_presentation_only_file() -> None:
    loaded = load_spec_text(ABELIAN)
    assert loaded.hopf is None
    assert loaded.name == "pair"
    assert loaded.presentation.degree == 3
    assert loaded.presentation.is_abelian()


def test_explicit_degree_overrides_the_header() -> None:
    assert load_spec_text(ABELIAN, degree=2).presentation.degree == 2


def test_sample_file_with_hopf_data() -> None:
    loaded = load_spec_file(DATA / "galilei_classical.alg")
    assert loaded.hopf is not None
    assert loaded.hopf.sources["S(a)"] == "-a + v*tau"
    assert all(c.is_zero() for c in loaded.hopf.counits.values())


def test_missing_file() -> None:
    with pytest.raises(FileNotFoundError):
        load_spec_file(DATA / "absent.alg")


@pytest.mark.parametrize(
    "text",
    [
        "generators: p q\n[relations]\n",
        "generators: p q\n[relations]\n[q, p] = 0\n[coproduct]\np = p (x) I\nq = q (x) I\n",
        "generators: p q\n[relations]\n[q, p] = 0\n[unknown]\n",
        "generators: p q\n[relations]\n[q, p] = 0\n[relations]\n",
        "generators: p q\nauthor: nobody\n",
        "name: empty\n",
        "generators: p x\n[relations]\n[x, p] = 0\n",
        "generators: p kappa\n[relations]\n[kappa, p] = 0\n",
        "generators: p q\nweights: p=one\n",
        "generators: p q\n[relations]\nq p = 0\n",
        "generators: p q\n[relations]\n[q, p] = p +\n",
    ],
)
def test_malformed_files_are_rejected(text: str) -> None:
    with pytest.raises(SpecFileError):
        load_spec_text(text)

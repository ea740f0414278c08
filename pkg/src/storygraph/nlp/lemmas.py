"""Rule-based English lemmatizer.

An exception table (irregular_lemmas.tsv) is consulted first, then a small
ordered set of suffix rules handles regular plurals, -ing and -ed forms.
The rules do not try to cover all of English; they are deterministic and
good enough for the short sentences stories are made of.
"""

from __future__ import annotations

from importlib import resources

_DOUBLED = set("bdgkmnprt")
_SIBILANT_ENDINGS = ("s", "x", "z", "ch", "sh")


def _load_irregulars() -> dict[str, str]:
    table = {}
    text = resources.files("storygraph.nlp").joinpath("data/irregular_lemmas.tsv").read_text("utf-8")
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        form, lemma = line.split("\t")
        table[form] = lemma
    return table


class Lemmatizer:
    def __init__(self, irregulars: dict[str, str] | None = None):
        self.irregulars = dict(_load_irregulars() if irregulars is None else irregulars)

    def lemma(self, word: str) -> str:
        w = word.lower()
        hit = self.irregulars.get(w)
        if hit is not None:
            return hit
        if len(w) >= 5 and w.endswith("ies"):
            return w[:-3] + "y"
        if len(w) >= 5 and w.endswith("ied"):
            return w[:-3] + "y"
        if len(w) >= 4 and w.endswith("oes"):
            return w[:-2]
        if w.endswith("es") and w[:-2].endswith(_SIBILANT_ENDINGS):
            return w[:-2]
        if w.endswith(("ss", "us", "is")):
            return w
        if len(w) >= 3 and w.endswith("s"):
            return w[:-1]
        if len(w) >= 6 and w.endswith("ing"):
            return self._strip_doubling(w[:-3])
        if len(w) >= 5 and w.endswith("ed") and not w.endswith("eed"):
            return self._strip_doubling(w[:-2])
        return w

    @staticmethod
    def _strip_doubling(stem: str) -> str:
        # shipping -> shipp -> ship, but selling keeps its ll
        if len(stem) >= 3 and stem[-1] == stem[-2] and stem[-1] in _DOUBLED:
            return stem[:-1]
        return stem

    def lemma_phrase(self, text: str) -> str:
        """Lemmatize a whitespace-separated phrase word by word."""
        return " ".join(self.lemma(w) for w in text.split())

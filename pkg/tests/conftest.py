import pytest

from wnverify.ingest import AlignmentRecord, Token
from wnverify.lexicon import Lemma, Lexicon, MultiSynset


def L(form, lang="en", pos="n"):
    return Lemma(lang, form, pos)


def link(sent, src, tgt, pos="n", langs=("en", "it")):
    """Alignment record from ``(form, synset, tok)`` triples."""
    (sf, ss, st), (tf, ts, tt) = src, tgt
    return AlignmentRecord(
        sent,
        Token(langs[0], sf, pos, st, (ss,) if ss else ()),
        Token(langs[1], tf, pos, tt, (ts,) if ts else ()),
    )


TOY_SYNSETS = [
    MultiSynset("n-test", "n", {"en": ["test", "trial"], "it": ["prova"]}),
    MultiSynset("n-proof", "n", {"en": ["proof", "test"], "it": ["prova", "dimostrazione"]}),
    MultiSynset("n-lawsuit", "n", {"en": ["trial"], "it": ["processo"]}),
    MultiSynset("n-time", "n", {"en": ["time"], "it": ["tempo"]}),
    MultiSynset("n-weather", "n", {"en": ["weather"], "it": ["tempo"]}),
    MultiSynset("n-bundle", "n", {"en": ["bundle", "package"], "it": ["involto"]}),
    MultiSynset("n-liter", "n", {"en": ["liter", "litre"], "it": ["litro"]}),
    MultiSynset("n-haste1", "n", {"en": ["haste", "hurry"], "it": ["fretta"]}),
    MultiSynset("n-haste2", "n", {"en": ["haste", "hurry"]}, frozenset({"it"})),
    MultiSynset("n-haste3", "n", {"en": ["haste", "hurry", "rush"]}),
    MultiSynset("n-gist", "n", {"en": ["gist", "essence"], "it": ["succo"]}),
    MultiSynset("r-global", "r", {"en": ["globally"], "it": ["globalmente"]}),
    MultiSynset("v-reverse", "v", {"en": ["reverse", "turn"], "it": ["invertire"]}),
    MultiSynset("v-turn", "v", {"en": ["turn", "become"], "it": ["diventare"]}),
    MultiSynset("v-spin", "v", {"en": ["turn", "spin"], "it": ["girare"]}),
]


@pytest.fixture
def toy():
    return Lexicon(TOY_SYNSETS)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

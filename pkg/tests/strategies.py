"""Hypothesis strategies and seeded builders for random lexicons and corpora."""
import random

from hypothesis import strategies as st

from wnverify.ingest import AlignmentRecord, Token
from wnverify.lexicon import POS_TAGS, Lexicon, MultiSynset

LANGS = ("en", "it", "fr")


@st.composite
def synset_lists(draw, max_synsets=12, vocab=8, langs=LANGS):
    n = draw(st.integers(0, max_synsets))
    out = []
    for i in range(n):
        pos = draw(st.sampled_from(POS_TAGS[:2]))
        members, gaps = {}, set()
        for lang in langs:
            choice = draw(st.sampled_from(("member", "member", "gap", "none")))
            if choice == "member":
                forms = draw(st.sets(st.integers(0, vocab - 1), min_size=1, max_size=3))
                members[lang] = [f"{lang}{f}" for f in sorted(forms)]
            elif choice == "gap":
                gaps.add(lang)
        if not members:
            members[langs[0]] = [f"{langs[0]}0"]
            gaps.discard(langs[0])
        out.append(MultiSynset(f"S{i:03d}", pos, members, frozenset(gaps)))
    return out


lexicons = synset_lists().map(Lexicon)


def random_lexicon(rng: random.Random, n_synsets=20, vocab=10, langs=("en", "it"), gap_rate=0.1):
    synsets = []
    for i in range(n_synsets):
        members, gaps = {}, set()
        for j, lang in enumerate(langs):
            if j and rng.random() < gap_rate:
                gaps.add(lang)
                continue
            k = rng.choice((1, 1, 2, 3))
            members[lang] = sorted({f"{lang}{rng.randrange(vocab)}" for _ in range(k)})
        synsets.append(MultiSynset(f"S{i:03d}", "n", members, frozenset(gaps)))
    return Lexicon(synsets)


def random_corpus(rng: random.Random, lex: Lexicon, n, langs=("en", "it"), consistent_rate=0.7, sent_len=8):
    """Random links; most share a synset, the rest pair arbitrary senses."""
    senses = {lang: [(l, sid) for l in lex.lemmas(lang) for sid in lex.synsets_of(l)] for lang in langs}
    bilingual = [s for s in lex if all(l in s.members for l in langs)]
    records = []
    for i in range(n):
        if bilingual and rng.random() < consistent_rate:
            s = rng.choice(bilingual)
            (a, sa), (b, sb) = (s.lemmas(langs[0]), s.id), (s.lemmas(langs[1]), s.id)
            a, b = rng.choice(a), rng.choice(b)
        else:
            a, sa = rng.choice(senses[langs[0]])
            b, sb = rng.choice(senses[langs[1]])
        sent = f"s{i // sent_len:04d}"
        tok = i % sent_len
        records.append(
            AlignmentRecord(sent, Token(a.lang, a.form, a.pos, tok, (sa,)), Token(b.lang, b.form, b.pos, tok, (sb,)))
        )
    return records

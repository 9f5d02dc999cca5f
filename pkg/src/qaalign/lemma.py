"""Lemma baseline: align QA pairs whose predicates and answer heads share lemmas.

The lemmatizer is self-contained: an exception table for irregular forms
plus ordered suffix rules with spelling fixups (un-doubling, e-restoration).
Rules are applied to a fixpoint, so lemmatize(lemmatize(w)) == lemmatize(w)
holds for any input by construction. Outputs are only consumed via equality
comparisons, so consistency matters more than dictionary truth; genuinely
ambiguous forms (found/founded, leaves) resolve with a verb bias.
"""

from __future__ import annotations

from .models import (
    Alignment,
    AlignmentSet,
    AnswerSpan,
    Provenance,
    QARelation,
    SentencePairInstance,
    SentenceText,
)

HeadIndex = dict[tuple[str, str], list[int]]

# Irregular and rule-breaking forms. Values must be fixpoints of lemmatize
# (tested); chains through the table are allowed (founded -> found -> find).
LEMMA_EXCEPTIONS: dict[str, str] = {
    # be / auxiliaries / contractions
    "am": "be", "is": "be", "are": "be", "was": "be", "were": "be",
    "been": "be", "being": "be", "'m": "be", "'re": "be",
    "has": "have", "had": "have", "'ve": "have",
    "does": "do", "did": "do", "done": "do", "doing": "do",
    "'ll": "will", "'d": "would", "n't": "not",
    # irregular verbs (past / participle / awkward -ing)
    "goes": "go", "went": "go", "gone": "go", "going": "go",
    "said": "say", "made": "make", "took": "take", "taken": "take",
    "came": "come", "saw": "see", "seen": "see", "seeing": "see",
    "got": "get", "gotten": "get", "knew": "know", "known": "know",
    "thought": "think", "found": "find", "gave": "give", "given": "give",
    "told": "tell", "became": "become", "shown": "show", "left": "leave",
    "felt": "feel", "brought": "bring", "began": "begin", "begun": "begin",
    "kept": "keep", "held": "hold", "wrote": "write", "written": "write",
    "stood": "stand", "heard": "hear", "meant": "mean", "met": "meet",
    "ran": "run", "paid": "pay", "sat": "sit", "spoke": "speak",
    "spoken": "speak", "lay": "lie", "lain": "lie", "lying": "lie",
    "lied": "lie", "led": "lead", "grew": "grow", "grown": "grow",
    "lost": "lose", "fell": "fall", "fallen": "fall", "sent": "send",
    "built": "build", "understood": "understand", "drew": "draw",
    "drawn": "draw", "broke": "break", "broken": "break", "spent": "spend",
    "rose": "rise", "risen": "rise", "drove": "drive", "driven": "drive",
    "bought": "buy", "wore": "wear", "worn": "wear", "chose": "choose",
    "chosen": "choose", "sought": "seek", "taught": "teach",
    "caught": "catch", "fought": "fight", "threw": "throw",
    "thrown": "throw", "flew": "fly", "flown": "fly", "stole": "steal",
    "stolen": "steal", "sold": "sell", "ate": "eat", "eaten": "eat",
    "eating": "eat", "drank": "drink", "drunk": "drink", "sang": "sing",
    "sung": "sing", "swam": "swim", "swum": "swim", "rode": "ride",
    "ridden": "ride", "rang": "ring", "rung": "ring", "froze": "freeze",
    "frozen": "freeze", "shook": "shake", "shaken": "shake", "bit": "bite",
    "bitten": "bite", "hid": "hide", "hidden": "hide", "shot": "shoot",
    "slept": "sleep", "woke": "wake", "woken": "wake", "won": "win",
    "swept": "sweep", "swung": "swing", "struck": "strike",
    "stricken": "strike", "hung": "hang", "dug": "dig", "stuck": "stick",
    "spun": "spin", "tore": "tear", "torn": "tear", "fed": "feed",
    "fled": "flee", "bled": "bleed", "bred": "breed", "dealt": "deal",
    "lent": "lend", "bent": "bend", "sprang": "spring", "sprung": "spring",
    "slid": "slide", "forgot": "forget", "forgotten": "forget",
    "forgave": "forgive", "forgiven": "forgive", "beaten": "beat",
    "beating": "beat", "blew": "blow", "blown": "blow", "swore": "swear",
    "sworn": "swear", "arose": "arise", "arisen": "arise", "bore": "bear",
    "born": "bear", "borne": "bear", "laid": "lay", "wept": "weep",
    "misled": "mislead", "overcame": "overcome", "withdrew": "withdraw",
    "withdrawn": "withdraw", "died": "die", "dying": "die",
    # -ge verbs the suffix fixups cannot reconstruct
    "changed": "change", "changing": "change", "managed": "manage",
    "managing": "manage", "charged": "charge", "charging": "charge",
    "encouraged": "encourage", "encouraging": "encourage",
    "damaged": "damage", "damaging": "damage", "engaged": "engage",
    "engaging": "engage", "emerged": "emerge", "emerging": "emerge",
    "urged": "urge", "urging": "urge", "merged": "merge",
    "merging": "merge", "arranged": "arrange", "arranging": "arrange",
    "exchanged": "exchange", "challenged": "challenge",
    "challenging": "challenge",
    # -are/-ure/-ire/-ore stems blocked by the measure gate
    "captured": "capture", "capturing": "capture", "measured": "measure",
    "measuring": "measure", "figured": "figure", "figuring": "figure",
    "featured": "feature", "featuring": "feature", "secured": "secure",
    "securing": "secure", "declared": "declare", "declaring": "declare",
    "compared": "compare", "comparing": "compare", "prepared": "prepare",
    "preparing": "prepare", "injured": "injure", "injuring": "injure",
    "required": "require", "requiring": "require", "acquired": "acquire",
    "acquiring": "acquire", "desired": "desire", "retired": "retire",
    "retiring": "retire", "inspired": "inspire", "inspiring": "inspire",
    "ensured": "ensure", "ensuring": "ensure", "ignored": "ignore",
    "ignoring": "ignore", "explored": "explore", "exploring": "explore",
    "restored": "restore", "restoring": "restore", "exploded": "explode",
    "exploding": "explode",
    # -eat/-oat bases that the at->ate fixup would mangle
    "heated": "heat", "heating": "heat", "seated": "seat",
    "seating": "seat", "treated": "treat", "treating": "treat",
    "cheated": "cheat", "cheating": "cheat", "defeated": "defeat",
    "repeated": "repeat", "repeating": "repeat", "retreated": "retreat",
    "sweating": "sweat", "floated": "float", "floating": "float",
    "coated": "coat", "coating": "coat",
    # irregular nouns
    "men": "man", "women": "woman", "children": "child", "feet": "foot",
    "teeth": "tooth", "mice": "mouse", "geese": "goose", "oxen": "ox",
    "wives": "wife", "knives": "knife", "lives": "live",
    "leaves": "leave", "shelves": "shelf", "wolves": "wolf",
    "thieves": "thief", "loaves": "loaf", "halves": "half",
    "calves": "calf", "selves": "self", "scarves": "scarf",
    "heroes": "hero", "potatoes": "potato", "tomatoes": "tomato",
    "echoes": "echo", "analyses": "analysis", "crises": "crisis",
    "buses": "bus", "gases": "gas", "aches": "ache",
    "headaches": "headache", "movies": "movie", "cookies": "cookie",
    # words whose surface ending looks like a suffix but is not
    "news": "news", "series": "series", "species": "species",
    "lens": "lens", "politics": "politics", "indeed": "indeed",
    "hundred": "hundred", "sacred": "sacred", "hatred": "hatred",
    "naked": "naked", "wicked": "wicked", "speed": "speed",
    "breed": "breed", "greed": "greed", "bleed": "bleed",
    "bias": "bias", "themselves": "themselves",
    "ourselves": "ourselves", "yourselves": "yourselves",
    "morning": "morning", "evening": "evening", "during": "during",
    "ceiling": "ceiling", "everything": "everything",
    "something": "something", "nothing": "nothing",
    "anything": "anything", "always": "always", "perhaps": "perhaps",
    # assorted fixups
    "used": "use", "using": "use", "purchased": "purchase",
    "purchasing": "purchase", "focused": "focus", "focusing": "focus",
    "biased": "bias", "controlled": "control", "controlling": "control",
    "travelled": "travel", "travelling": "travel", "cancelled": "cancel",
    "cancelling": "cancel", "labelled": "label", "labelling": "label",
    "breathed": "breathe", "breathing": "breathe", "dyed": "dye",
    "added": "add", "adding": "add",
}

_VOWELS = set("aeiou")


def _vowel_flags(stem: str) -> list[bool]:
    # y acts as a vowel after a consonant (standard stemmer convention)
    flags: list[bool] = []
    for i, c in enumerate(stem):
        if c in _VOWELS:
            flags.append(True)
        elif c == "y" and i > 0 and not flags[i - 1]:
            flags.append(True)
        else:
            flags.append(False)
    return flags


def _measure(stem: str) -> int:
    """Count vowel-consonant sequences (the stemmer's syllable proxy)."""
    m = 0
    prev_vowel = False
    for v in _vowel_flags(stem):
        if prev_vowel and not v:
            m += 1
        prev_vowel = v
    return m


def _ends_cvc(stem: str) -> bool:
    if len(stem) < 3:
        return False
    flags = _vowel_flags(stem)
    return (
        not flags[-3]
        and flags[-2]
        and not flags[-1]
        and stem[-1] not in "wxy"
    )


def _has_vowel(stem: str) -> bool:
    return any(_vowel_flags(stem))


# Stems ending this way after -ed/-ing removal almost always dropped an e.
_NEEDS_E_SUFFIXES = ("at", "bl", "dg")
_KEEP_DOUBLE = set("lszf")


def _restore(stem: str, stripped_ing: bool) -> str:
    last = stem[-1]
    if last == "e":
        # -eed / -oeing style bases: the e survives -ing but not -ed
        return stem if stripped_ing else stem + "e"
    if len(stem) >= 2 and last == stem[-2] and last.isalpha() and not _vowel_flags(stem)[-1]:
        if last not in _KEEP_DOUBLE:
            return stem[:-1]
        return stem
    if stem.endswith(_NEEDS_E_SUFFIXES):
        return stem + "e"
    if last in "cuv":
        return stem + "e"
    if last == "z" and not stem.endswith("zz"):
        return stem + "e"
    if last == "s" and not stem.endswith("ss"):
        return stem + "e"
    if (
        last == "l"
        and len(stem) >= 2
        and not _vowel_flags(stem)[-2]
        and stem[-2] not in "lrwy"
    ):
        return stem + "e"
    if _measure(stem) == 1 and _ends_cvc(stem):
        return stem + "e"
    return stem


def _apply_one_rule(w: str) -> str | None:
    """One suffix detachment, or None if nothing applies."""
    for suffix, repl in (
        ("sses", "ss"), ("ches", "ch"), ("shes", "sh"), ("zzes", "zz"),
        ("oes", "oe"), ("ies", "y"), ("xes", "x"), ("zes", "ze"),
        ("ses", "se"), ("ied", "y"),
    ):
        if w.endswith(suffix):
            out = w[: -len(suffix)] + repl
            if len(out) >= 3:
                return out
    for suffix in ("ing", "ed"):
        if w.endswith(suffix):
            stem = w[: -len(suffix)]
            if len(stem) >= 3 and _has_vowel(stem):
                return _restore(stem, stripped_ing=(suffix == "ing"))
    if w.endswith("es"):
        out = w[:-2] + "e"
        if len(out) >= 3:
            return out
    if w.endswith("s") and not w.endswith(("ss", "us", "is")):
        out = w[:-1]
        if len(out) >= 3:
            return out
    return None


def lemmatize(word: str) -> str:
    """Total and deterministic; iterates to a fixpoint, so it is idempotent."""
    w = word.lower()
    for _ in range(len(w) + 20):
        nxt = LEMMA_EXCEPTIONS.get(w)
        if nxt is None:
            nxt = _apply_one_rule(w)
        if nxt is None or nxt == w:
            return w
        w = nxt
    return w


# Function words skipped when picking the rightmost content token of a span.
HEAD_STOPLIST = frozenset(
    """
    the a an this that these those his her its their our your my some any
    each every all both few many much most other another such no nor not
    only own same so than too very of in on at by for with about against
    between into through before after above below to from up down out off
    over under again further then once here there when where why how and or
    but if because as until while is are was were be been being have has
    had do does did can will would should could may might must shall 's n't
    """.split()
)


def _is_content(token: str) -> bool:
    return token.lower() not in HEAD_STOPLIST and any(c.isalnum() for c in token)


def answer_head(
    span: AnswerSpan, sent: SentenceText, heads: list[int] | None = None
) -> int:
    """Token index of the span's head word.

    With dependency heads: the leftmost token whose head falls outside the
    span. Without: the rightmost content token, else the rightmost token.
    """
    if heads is not None and len(heads) == len(sent.tokens):
        outside = [
            i
            for i in span.indices()
            if not (span.start <= heads[i] < span.end)
        ]
        if outside:
            return outside[0]
    for i in reversed(span.indices()):
        if _is_content(sent.tokens[i]):
            return i
    return span.end - 1


def _head_lemmas(
    qa: QARelation, sent: SentenceText, heads: list[int] | None
) -> set[str]:
    return {
        lemmatize(sent.tokens[answer_head(span, sent, heads)])
        for span in qa.answers
    }


def qa_pair_matches(
    qa_a: QARelation,
    sent_a: SentenceText,
    qa_b: QARelation,
    sent_b: SentenceText,
    heads_a: list[int] | None = None,
    heads_b: list[int] | None = None,
) -> bool:
    """Predicate lemmas equal and some pair of answer-head lemmas equal."""
    if lemmatize(sent_a.tokens[qa_a.predicate_index]) != lemmatize(
        sent_b.tokens[qa_b.predicate_index]
    ):
        return False
    return bool(_head_lemmas(qa_a, sent_a, heads_a) & _head_lemmas(qa_b, sent_b, heads_b))


def lemma_align(
    pair: SentencePairInstance, heads: HeadIndex | None = None
) -> AlignmentSet:
    """Emit every matching QA pair as a 1:1 alignment (no matching decode)."""
    heads_a = heads.get((pair.a.doc_id, pair.a.sent_id)) if heads else None
    heads_b = heads.get((pair.b.doc_id, pair.b.sent_id)) if heads else None
    found = [
        Alignment.of([qa_a.qa_id], [qa_b.qa_id])
        for qa_a in pair.qas_a
        for qa_b in pair.qas_b
        if qa_pair_matches(qa_a, pair.a, qa_b, pair.b, heads_a, heads_b)
    ]
    return AlignmentSet.of(pair.pair_id, Provenance.LEMMA, found)

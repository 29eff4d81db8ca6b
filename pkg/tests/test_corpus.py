import pytest

from lexis.corpus import (
    Alphabet,
    Corpus,
    ingest_char,
    ingest_tokens,
    load_corpus,
    save_corpus,
    shuffle_targets,
)
from lexis.errors import EmptyCorpus, EmptyTarget, ParseError


def test_ingest_char_first_appearance_ids():
    c = ingest_char(["baca", "cd"])
    assert c.alphabet.labels == ("b", "a", "c", "d")
    assert c.targets == ((0, 1, 2, 1), (2, 3))
    assert c.mode == "char"
    assert c.total_length == 6


def test_ingest_tokens_splits_on_whitespace():
    c = ingest_tokens(["the cat  sat", "cat sat"])
    assert c.alphabet.labels == ("the", "cat", "sat")
    assert c.targets == ((0, 1, 2), (1, 2))
    assert c.render(c.targets[0]) == "the cat sat"


def test_render_char_concatenates():
    c = ingest_char(["abca"])
    assert c.render(c.targets[0]) == "abca"
    assert c.render_targets() == ("abca",)


def test_empty_corpus_rejected():
    with pytest.raises(EmptyCorpus):
        ingest_char([])


def test_empty_target_reports_index():
    with pytest.raises(EmptyTarget) as exc:
        ingest_char(["ab", "", "cd"])
    assert exc.value.index == 1
    assert "target 2" in str(exc.value)


def test_duplicate_alphabet_labels_rejected():
    with pytest.raises(ParseError):
        Alphabet(("a", "b", "a"))


def test_alphabet_unknown_label():
    a = Alphabet(("x", "y"))
    assert a.id_of("y") == 1
    with pytest.raises(ParseError):
        a.id_of("z")


def test_load_save_round_trip(tmp_path):
    p = tmp_path / "corpus.txt"
    p.write_text("abab\ncdcd\n", encoding="utf-8")
    c = load_corpus(str(p), "char")
    assert c.render_targets() == ("abab", "cdcd")
    q = tmp_path / "copy.txt"
    save_corpus(c, str(q))
    assert q.read_text(encoding="utf-8") == "abab\ncdcd\n"


def test_load_corpus_token_mode(tmp_path):
    p = tmp_path / "corpus.txt"
    p.write_text("a bb a\nbb a\n", encoding="utf-8")
    c = load_corpus(str(p), "token")
    assert c.alphabet.labels == ("a", "bb")
    assert c.render_targets() == ("a bb a", "bb a")


def test_load_corpus_unknown_mode(tmp_path):
    p = tmp_path / "corpus.txt"
    p.write_text("ab\n", encoding="utf-8")
    with pytest.raises(ParseError):
        load_corpus(str(p), "words")


def test_load_corpus_bad_encoding(tmp_path):
    p = tmp_path / "corpus.txt"
    p.write_bytes(b"\xff\xfe\x00ab")
    with pytest.raises(ParseError):
        load_corpus(str(p), "char")


def test_shuffle_targets_preserves_multisets():
    c = ingest_char(["aabcaabdaabc", "xyxy"])
    s = shuffle_targets(c, 7)
    assert s.alphabet == c.alphabet
    assert len(s.targets) == len(c.targets)
    for orig, shuf in zip(c.targets, s.targets):
        assert sorted(orig) == sorted(shuf)


def test_shuffle_targets_deterministic_and_seed_sensitive():
    c = ingest_char(["abcdefghijklmnop" * 4])
    assert shuffle_targets(c, "s1").targets == shuffle_targets(c, "s1").targets
    assert shuffle_targets(c, "s1").targets != shuffle_targets(c, "s2").targets
    assert shuffle_targets(c, 3).targets == shuffle_targets(c, 3).targets

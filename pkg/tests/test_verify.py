import json

import pytest

from fjump import Corpus, default_corpus, load_corpus, run_suite
from fjump.verify import parse_rational


class TestParseRational:
    def test_forms(self):
        from fractions import Fraction

        assert parse_rational("5/6") == Fraction(5, 6)
        assert parse_rational("3") == 3
        assert parse_rational(2) == 2

    @pytest.mark.parametrize("bad", ["1.5", "1e3", "a/b", "", None, 2.5, "1/2/3", "1/0"])
    def test_rejects_non_rationals(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)


class TestCorpus:
    def test_default_shape(self):
        corpus = default_corpus()
        assert len(corpus.entries) >= 12
        assert {e.p for e in corpus.entries} == {2, 3, 5, 7}

    def test_load_default(self):
        assert len(load_corpus(None).entries) == len(default_corpus().entries)

    def test_load_file(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text(
            '{"p": 2, "f": "x", "B": "1", "expect_jumps": ["1"]}\n'
            '\n'
            '{"p": 3, "f": "x*y", "B": 1}\n'
        )
        corpus = load_corpus(str(path))
        assert len(corpus.entries) == 2
        assert corpus.entries[0].expect_jumps == (1,)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("\n\n")
        with pytest.raises(ValueError, match="no entries"):
            load_corpus(str(path))

    def test_bad_polynomial_names_entry(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"p": 2, "f": "x", "B": "1"}\n{"p": 2, "f": "x +", "B": "1"}\n')
        with pytest.raises(ValueError, match="entry 1"):
            load_corpus(str(path))

    def test_bad_prime_names_entry(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"p": 4, "f": "x", "B": "1"}\n')
        with pytest.raises(ValueError, match="entry 0"):
            load_corpus(str(path))

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"p": 2, "f": "x", "B": "1", "bound": "2"}\n')
        with pytest.raises(ValueError, match="unknown keys"):
            load_corpus(str(path))

    def test_missing_key(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"p": 2, "f": "x"}\n')
        with pytest.raises(ValueError, match="missing key"):
            load_corpus(str(path))

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text("{not json}\n")
        with pytest.raises(ValueError, match="invalid JSON"):
            load_corpus(str(path))


def _small_corpus():
    corpus = default_corpus()
    return Corpus([e for e in corpus.entries if e.f_text in ("x", "x*y")])


class TestRunSuite:
    def test_small_corpus_passes(self):
        report = run_suite(_small_corpus())
        assert report.passed
        names = [c.name for c in report.entries[0].checks]
        assert names == [
            "expected_jumps",
            "localization",
            "right_constancy",
            "isolated_jumps",
            "shift_law",
            "scale_law",
            "chain_stabilization",
            "total_order",
            "class_bijection",
        ]

    def test_deterministic_hash(self):
        corpus = _small_corpus()
        a = run_suite(corpus, seed=0)
        b = run_suite(corpus, seed=0)
        assert a.stable_hash() == b.stable_hash()

    def test_concurrent_matches_serial(self):
        corpus = _small_corpus()
        serial = run_suite(corpus, seed=0)
        threaded = run_suite(corpus, seed=0, jobs=3)
        assert serial.stable_hash() == threaded.stable_hash()

    def test_failure_reported_not_raised(self):
        corpus = Corpus(
            [_entry for _entry in default_corpus().entries if _entry.f_text == "x"][:1]
        )
        wrong = Corpus(
            [
                type(corpus.entries[0])(
                    corpus.entries[0].p,
                    corpus.entries[0].f_text,
                    corpus.entries[0].bound,
                    (corpus.entries[0].bound / 2,),  # wrong expectation
                )
            ]
        )
        report = run_suite(wrong)
        assert not report.passed
        bad = [c for c in report.entries[0].checks if not c.passed]
        assert bad and bad[0].name == "expected_jumps"

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError):
            run_suite(Corpus([]))

    def test_entry_error_recorded_suite_continues(self):
        # an impossible budget makes every entry error out, none of which
        # escapes the suite
        report = run_suite(_small_corpus(), s_max=0)
        assert not report.passed
        assert all(er.error is not None for er in report.entries)

    def test_json_round_trip(self):
        report = run_suite(_small_corpus())
        obj = report.to_json_obj()
        text = json.dumps(obj)
        assert json.loads(text)["passed"] is True
        stripped = report.to_json_obj(with_timings=False)
        assert "seconds" not in stripped
        assert all("seconds" not in row for row in stripped["entries"])

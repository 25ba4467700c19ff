import json

from refa.bench import (
    bench_constructions,
    bench_orderings,
    summarize_orderings,
    to_csv,
    verify_trends,
)
from refa.cli import main
from refa.families import buffer_dfa


class TestBenchConstructions:
    def test_rows_and_header(self):
        records = bench_constructions({"buffer": [1, 2]})
        csv_text = to_csv(records)
        lines = csv_text.strip().split("\n")
        assert lines[0] == "family,n,method,states,transitions,size,awidth,height,micros"
        assert len(lines) == 1 + 2 * 4

    def test_reproducible_counts(self):
        a = bench_constructions({"options": [3]})
        b = bench_constructions({"options": [3]})
        strip = lambda recs: [r.row()[:8] for r in recs]  # ignore timings
        assert strip(a) == strip(b)

    def test_buffer_follow_smaller_than_position(self):
        records = bench_constructions({"buffer": [2, 3, 4]})
        sizes = {(r.n, r.method): r.size for r in records}
        for n in (2, 3, 4):
            assert sizes[(n, "follow")] < sizes[(n, "pos")]

    def test_trends(self):
        checks = verify_trends({"options": [8, 16], "row3": [8, 16]})
        assert checks and all(ok for _, _, _, ok in checks)


class TestBenchOrderings:
    def test_records_verified_and_summary(self):
        records = bench_orderings(n=4, alphabet_size=2, samples=3, seed=11)
        assert len(records) == 3 * 6
        summary = summarize_orderings(records)
        assert {m for m, _ in summary} == {"id", "greedy", "dm", "cycles", "indep", "bridge"}

    def test_explicit_automata_and_orders(self):
        records = bench_orderings(
            automata={"buffer6": buffer_dfa(6)},
            strategies=(),
            fixed_orders={
                "order1": [6, 5, 4, 3, 2, 1, 0],
                "order2": [0, 2, 4, 6, 1, 5, 3],
            },
        )
        heights = {r.method: r.height for r in records}
        assert heights == {"order1": 6, "order2": 2}

    def test_dm_no_worse_than_id_on_median(self):
        records = bench_orderings(n=6, alphabet_size=2, samples=15, seed=29)
        medians = dict(summarize_orderings(records))
        assert medians["dm"] <= medians["id"]


class TestCli:
    def test_measure(self, capsys):
        assert main(["measure", "(ab)*"]) == 0
        out = capsys.readouterr().out
        assert "size: 8" in out and "height: 1" in out

    def test_convert_and_rank_and_equiv(self, tmp_path, capsys):
        buf = tmp_path / "b6.json"
        assert main(["gen", "buffer", "6", "-o", str(buf)]) == 0
        assert main(["rank", str(buf)]) == 0
        out = capsys.readouterr().out
        assert "cycle rank: 2" in out and "star height: 2" in out

        other = tmp_path / "b3.json"
        assert main(["gen", "buffer", "3", "-o", str(other)]) == 0
        assert main(["equiv", str(buf), str(other)]) == 0
        assert capsys.readouterr().out.startswith("inequivalent: ")
        assert main(["equiv", str(buf), str(buf)]) == 0
        assert capsys.readouterr().out.strip() == "equivalent"

    def test_toregex_example(self, tmp_path, capsys):
        buf = tmp_path / "b6.json"
        main(["gen", "buffer", "6", "-o", str(buf)])
        capsys.readouterr()
        assert main(["toregex", "--method", "eliminate", "--order", "fixed:6,5,4,3,2,1,0", str(buf)]) == 0
        assert capsys.readouterr().out.strip() == "(a(a(a(a(a(ab)*b)*b)*b)*b)*b)*"

    def test_toregex_mny_unicode(self, tmp_path, capsys):
        buf = tmp_path / "b3.json"
        main(["gen", "buffer", "3", "-o", str(buf)])
        capsys.readouterr()
        assert main(["toregex", "--method", "mny", "--order", "fixed:3,2,1,0", "--unicode", str(buf)]) == 0
        assert capsys.readouterr().out.strip() == "λ+(a(a(ab)*b)*b)*a(a(ab)*b)*b"

    def test_convert_json_loads(self, capsys):
        assert main(["convert", "--to", "pos", "(ab)*"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["initial"] == 0 and len(data["states"]) == 3

    def test_convert_dot(self, capsys):
        assert main(["convert", "--to", "of", "--format", "dot", "a*"]) == 0
        assert capsys.readouterr().out.startswith("digraph")

    def test_gen_random_deterministic(self, capsys):
        assert main(["gen", "random", "5", "2", "--seed", "9"]) == 0
        first = capsys.readouterr().out
        assert main(["gen", "random", "5", "2", "--seed", "9"]) == 0
        assert capsys.readouterr().out == first

    def test_gen_regex_flag(self, capsys):
        assert main(["gen", "options", "3", "--regex"]) == 0
        assert capsys.readouterr().out.strip() == "(a1+&)(a2+&)(a3+&)"

    def test_bench_csv(self, tmp_path):
        out = tmp_path / "bench.csv"
        assert main(["bench", "constructions", "--families", "buffer=1,2", "-o", str(out)]) == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0].startswith("family,n,method")

    def test_domain_error_exit_code(self, tmp_path, capsys):
        missing = tmp_path / "missing.json"
        assert main(["toregex", str(missing)]) == 1
        assert "error:" in capsys.readouterr().err

    def test_usage_error_exit_code(self, capsys):
        assert main(["convert", "--to", "bogus", "x"]) == 2
        capsys.readouterr()

    def test_syntax_error_exit_code(self, capsys):
        assert main(["measure", "(a"]) == 1
        assert "offset 2" in capsys.readouterr().err

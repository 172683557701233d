import json

import pytest

from latkit import (
    ParameterOutOfRange,
    Poset,
    PrunedProductSpec,
    are_isomorphic,
    default_separator,
    export_dot,
    lattice_from_dict,
    lattice_to_dict,
    load_lattice,
    poset_from_dict,
    pruned_product,
    save_lattice,
    standard,
)
from latkit.cli import main


def pruned_square():
    spec = PrunedProductSpec(Poset.from_lt(2, [(0, 1)]),
                             (default_separator(standard("chain", 3)),) * 2)
    return pruned_product(spec)


# -- JSON interchange ---------------------------------------------------------


def test_lattice_round_trip_plain(tmp_path):
    path = tmp_path / "m3.json"
    save_lattice(standard("m3"), str(path))
    back = load_lattice(str(path))
    assert back == standard("m3")
    assert back.name == "m3"


def test_lattice_round_trip_keeps_labels_and_pruned_edges(tmp_path):
    lat = pruned_square()
    path = tmp_path / "sq.json"
    save_lattice(lat, str(path))
    back = load_lattice(str(path))
    assert back.n == lat.n
    assert back.labels == lat.labels
    assert back.pruned_edges == lat.pruned_edges
    assert (back.leq == lat.leq).all()


def test_lattice_dict_rejections():
    with pytest.raises(ParameterOutOfRange):
        lattice_from_dict({"covers": []})
    with pytest.raises(ParameterOutOfRange):
        lattice_from_dict({"size": 2, "covers": [[0, 1, 2]]})
    with pytest.raises(ParameterOutOfRange):
        lattice_from_dict({"size": 2, "covers": [[0, 1]], "labels": ["a"]})
    # labels may only ride on canonical element order
    with pytest.raises(ParameterOutOfRange):
        lattice_from_dict({"size": 3, "covers": [[1, 0], [0, 2]],
                           "labels": ["x", "y", "z"]})


def test_poset_parsing():
    poset = poset_from_dict({"size": 3, "lt": [[0, 1], [1, 2]]})
    assert poset.n == 3
    assert bool(poset.leq[0, 2])  # transitive closure applied
    with pytest.raises(ParameterOutOfRange):
        poset_from_dict({"size": 3})
    with pytest.raises(ParameterOutOfRange):
        poset_from_dict({"size": 2, "lt": [[0, "b"]]})


# -- DOT export ----------------------------------------------------------------


def test_dot_counts_for_the_pruned_square():
    text = export_dot(pruned_square(), show_pruned=True, label_mode="coords")
    lines = text.splitlines()
    assert sum(1 for l in lines if "[label=" in l) == 9
    solid = [l for l in lines if "->" in l and "dashed" not in l]
    dashed = [l for l in lines if "dashed" in l]
    assert len(solid) == 10
    assert len(dashed) == 2
    assert '[label="(0,0)"]' in text


def test_dot_ranks_follow_height():
    text = export_dot(standard("boolean", 2))
    assert text.count("rank=same") == 3
    assert "e0 -> e1;" in text


def test_dot_rejects_missing_metadata():
    with pytest.raises(ParameterOutOfRange):
        export_dot(standard("m3"), show_pruned=True)
    with pytest.raises(ParameterOutOfRange):
        export_dot(standard("n5"), label_mode="coords")


# -- CLI -----------------------------------------------------------------------


def test_gen_writes_a_valid_file(tmp_path, capsys):
    out = tmp_path / "m3.json"
    assert main(["gen", "m3", "-o", str(out)]) == 0
    assert "wrote 5-element lattice" in capsys.readouterr().out
    assert load_lattice(str(out)).n == 5


def test_gen_records_pruned_edges(tmp_path, capsys):
    poset = tmp_path / "p.poset"
    poset.write_text(json.dumps({"size": 2, "lt": [[0, 1]]}))
    out = tmp_path / "l.json"
    code = main(["gen", f"prune({poset}, m3, m3)", "-o", str(out)])
    assert code == 0
    assert "6 pruned edges" in capsys.readouterr().out
    lat = load_lattice(str(out))
    assert lat.n == 25 and len(lat.pruned_edges) == 6


def test_gen_parse_errors_exit_2(tmp_path, capsys):
    out = str(tmp_path / "x.json")
    assert main(["gen", "chain", "-o", out]) == 2
    assert main(["gen", "prod(m3", "-o", out]) == 2
    assert main(["gen", "hexagon", "-o", out]) == 2
    assert main(["gen", "prune(missing.poset, m3)", "-o", out]) == 2
    capsys.readouterr()


def test_gen_construction_errors_exit_3(tmp_path, capsys):
    target = tmp_path / "m3.json"
    save_lattice(standard("m3"), str(target))
    code = main(["gen", f"represent({target})", "-o", str(tmp_path / "out.json")])
    assert code == 3
    assert "NotDistributive" in capsys.readouterr().err

    assert main(["gen", "prod(boolean:4, boolean:4)", "-o", str(tmp_path / "big.json"),
                 "--max-elements", "100"]) == 3
    capsys.readouterr()


def test_check_verdicts_and_exit_codes(tmp_path, capsys):
    m3 = tmp_path / "m3.json"
    save_lattice(standard("m3"), str(m3))
    assert main(["check", str(m3), "--isoform", "--uniform", "--regular"]) == 0
    capsys.readouterr()

    c3 = tmp_path / "c3.json"
    save_lattice(standard("chain", 3), str(c3))
    assert main(["check", str(c3), "--uniform", "--json"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["checks"][0]["verdict"] == "fail"
    assert "sizes 1 and 2" in report["checks"][0]["witness"]


def test_check_inconclusive_exits_4(tmp_path, capsys):
    b2 = tmp_path / "b2.json"
    save_lattice(standard("boolean", 2), str(b2))
    code = main(["check", str(b2), "--alg-isoform", "--max-functions", "1", "--json"])
    assert code == 4
    report = json.loads(capsys.readouterr().out)
    assert report["checks"][0]["verdict"] == "inconclusive"
    assert report["checks"][0]["witness"]


def test_check_cap_exits_3_with_partial_report(tmp_path, capsys):
    b2 = tmp_path / "b2.json"
    save_lattice(standard("boolean", 2), str(b2))
    code = main(["check", str(b2), "--distributive", "--uniform",
                 "--max-elements", "1", "--json"])
    assert code == 3
    report = json.loads(capsys.readouterr().out)
    assert "CapExceeded" in report["error"]


def test_check_unreadable_file_exits_2(tmp_path, capsys):
    assert main(["check", str(tmp_path / "nope.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["check", str(bad)]) == 2
    capsys.readouterr()


def test_con_reports_and_exports(tmp_path, capsys):
    c3 = tmp_path / "c3.json"
    save_lattice(standard("chain", 3), str(c3))
    exported = tmp_path / "con.json"
    code = main(["con", str(c3), "--export", str(exported), "--json"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["con_size"] == 4
    pairs = {tuple(ji["generating_pair"]) for ji in report["join_irreducible"]}
    assert pairs == {(0, 1), (1, 2)}
    assert are_isomorphic(load_lattice(str(exported)), standard("boolean", 2)) is not None


def test_cpe_command_exit_codes(tmp_path, capsys):
    c2, c3 = tmp_path / "c2.json", tmp_path / "c3.json"
    save_lattice(standard("chain", 2), str(c2))
    save_lattice(standard("chain", 3), str(c3))

    good = tmp_path / "id.json"
    good.write_text(json.dumps({"map": [0, 1, 2]}))
    assert main(["cpe", str(c3), str(c3), str(good)]) == 0
    capsys.readouterr()

    ends = tmp_path / "ends.json"
    ends.write_text(json.dumps({"map": [0, 2]}))
    assert main(["cpe", str(c2), str(c3), str(ends), "--json"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["extension_counts"] == [3, 1]
    assert "3 extensions" in report["witness"]

    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps({"map": [2, 0]}))
    assert main(["cpe", str(c2), str(c3), str(broken)]) == 2
    capsys.readouterr()


def test_survey_counts_and_exit(capsys):
    assert main(["survey", "5", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert [row["total"] for row in report["rows"]] == [1, 1, 1, 2, 5]
    assert report["violations"] == []
    assert main(["survey", "10"]) == 3
    capsys.readouterr()


def test_export_dot_cli(tmp_path, capsys):
    sq = tmp_path / "sq.json"
    save_lattice(pruned_square(), str(sq))
    out = tmp_path / "sq.dot"
    assert main(["export-dot", str(sq), "--show-pruned", "-o", str(out)]) == 0
    assert out.read_text().count("dashed") == 2

    plain = tmp_path / "c3.json"
    save_lattice(standard("chain", 3), str(plain))
    assert main(["export-dot", str(plain), "--show-pruned"]) == 2
    capsys.readouterr()


def test_reports_are_deterministic(tmp_path, capsys):
    n5 = tmp_path / "n5.json"
    save_lattice(standard("n5"), str(n5))
    main(["check", str(n5), "--json"])
    first = capsys.readouterr().out
    main(["check", str(n5), "--json"])
    assert capsys.readouterr().out == first


def test_usage_errors_exit_2(capsys):
    assert main(["no-such-command"]) == 2
    assert main(["gen", "m3"]) == 2  # missing -o
    capsys.readouterr()

import json
import os

import pytest

from esakia import algebra as al
from esakia import cli, io
from esakia import poset as po

DATA = {os.path.basename(p)[:-5]: p for p in cli.bundled_paths()}


def run(*argv):
    return cli.run(list(argv))


def lines(text):
    return text.splitlines()


def test_replicate_passes_with_recheck(capsys):
    assert cli.main(["replicate-paper", "--verify-witnesses"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "PASS f1(collapse).es False" not in out
    assert "PASS f1(collapse).es " in out


def test_check_x4_passes():
    status, text = run("check", "--fanspace", DATA["x4"])
    assert status == 0
    assert "PASS priestley" in text and "PASS esakia.downsets" in text


def test_check_ne_fails_with_certificates():
    status, text = run("check", "--fanspace", DATA["ne"], "--verify-witnesses")
    assert status == 1
    fails = [l for l in lines(text) if l.startswith("FAIL esakia")]
    assert len(fails) == 2 and all("{" in l for l in fails)
    assert "PASS priestley" in text


def test_check_dispatches_on_kind():
    for name in ("c3", "d2", "hom_d2_c2", "spectrum_c3"):
        status, _ = run("check", DATA[name])
        assert status == 0, name


def test_check_reports_a_non_heyting_hom_through_both_bridges():
    # the bridges hold, so the check passes; the payload records the negative verdicts
    status, text = run("check", DATA["hom_c3_c2"])
    assert status == 0
    assert '{"h_star": false, "ha_hom": false}' in text
    assert '{"ge": false, "implication": false}' in text


def test_classify_interleave():
    status, text = run("classify", "--map", DATA["interleave"])
    assert status == 1
    assert "PASS es\n" in text or "PASS es {" in text
    assert "FAIL es_plus" in text


def test_classify_multiple_files_are_prefixed():
    _, text = run("classify", DATA["collapse"], DATA["point_to_limit"])
    assert "collapse.json.es_minus" in text and "point_to_limit.json.spectral_open" in text


def test_json_format_is_the_twin_of_text():
    _, text = run("classify", "--map", DATA["collapse"])
    _, js = run("classify", "--map", DATA["collapse"], "--format", "json")
    doc = json.loads(js)
    assert [f"{c['verdict']} {c['id']}" for c in doc["checks"]] == [" ".join(l.split()[:2]) for l in lines(text)[:-1]]
    assert doc["ok"] is False


def test_fuzz_is_seeded():
    a = run("check", "--fuzz", "50", "--seed", "7")
    b = run("check", "--fuzz", "50", "--seed", "7")
    c = run("check", "--fuzz", "50", "--seed", "8")
    assert a == b and a[0] == 0
    assert a[1] != c[1]


def test_roundtrip_small():
    status, text = run("roundtrip", "--max-size", "3")
    assert status == 0
    assert "PASS dl.naturality" in text or "PASS dl." in text


def test_roundtrip_brw_small():
    status, text = run("roundtrip", "--brw", "--max-size", "4")
    assert status == 0
    assert "brw.functoriality" in text


def dualize(name, flag):
    status, text = run("dualize", DATA[name], flag)
    assert status == 0
    return io.parse(io.loads(text))


def test_dualize_d2_pf_is_an_antichain():
    P = dualize("d2", "--pf")
    assert P.size == 2 and not P.leq(0, 1) and not P.leq(1, 0)


def test_dualize_c2_ideals_is_a_two_element_frame():
    L = dualize("c2", "--ideals")
    assert L.size == 2


def test_dualize_trivial_lattice_pf_is_empty():
    assert dualize("one", "--pf").size == 0


def test_dualize_spectrum_and_filters():
    assert dualize("c3", "--spectrum") == io.load(DATA["spectrum_c3"])
    assert dualize("c3", "--filters").size == 3


def test_dualize_needs_exactly_one_target(capsys):
    assert cli.main(["dualize", DATA["c3"]]) == 2
    assert cli.main(["dualize", DATA["c3"], "--pf", "--ideals"]) == 2


@pytest.mark.parametrize("kind,n,count", [("posets", 1, 1), ("posets", 2, 2), ("posets", 3, 5), ("lattices", 5, 5)])
def test_enumerate_counts(kind, n, count):
    _, text = run("enumerate", kind, str(n))
    assert len(lines(text)) == count


def test_enumerate_distributive_matches_downset_oracle():
    for n in range(1, 7):
        _, text = run("enumerate", "distributive-lattices", str(n))
        # every finite distributive lattice is D(P) for P its join-irreducibles
        oracle = {po.canonical_form(al.downset_lattice(P).order).up for P in po.posets_up_to(n) if al.downset_lattice(P).size == n}
        assert len(lines(text)) == len(oracle), n


def test_enumerate_out_dir(tmp_path):
    status, text = run("enumerate", "posets", "3", "--out-dir", str(tmp_path))
    assert status == 0
    files = sorted(os.listdir(tmp_path))
    assert len(files) == 5
    for f in files:
        io.load(str(tmp_path / f), "poset")


def test_input_errors_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n "kind": "poset",\n "size": 2,\n "leq": [[0, 1]\n}')
    assert cli.main(["check", str(bad)]) == 2
    assert "line" in capsys.readouterr().err
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"kind": "poset", "size": 2, "leq": [], "extra": 1}))
    assert cli.main(["check", str(wrong)]) == 2
    assert "extra" in capsys.readouterr().err
    assert cli.main(["check"]) == 2
    assert cli.main(["enumerate", "posets", "99"]) == 2
    assert cli.main(["check", "--max-size", "-1", DATA["c2"]]) == 2


def test_unknown_verb_is_rejected_before_work():
    with pytest.raises(SystemExit) as e:
        cli.main(["explode"])
    assert e.value.code == 2


def test_fail_witnesses_survive_recheck():
    _, text = run("check", "--fuzz", "300", "--verify-witnesses")
    rechecks = [l for l in lines(text) if ".recheck." in l]
    assert rechecks and all(l.startswith("PASS") for l in rechecks)

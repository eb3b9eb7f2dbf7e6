from pathlib import Path

import pytest

from twistham.config import ConfigError, RunConfig, WindowConfig, config_dict, dump_config, load_config, parse_config
from twistham.instances import desk1, desk1_module_rational, desk2

FIX = Path(__file__).resolve().parents[1] / "fixtures"

BASE = """[algebra]
n = 2
m = 5
phi_pairs = [[1, 2, 1]]
chars = [[0, 0, 1, 0, 0], [0, 0, 0, 0, 1], [0, 0, 0, 1, 0], [0, 0, 0, 0, 0]]
mask = "NNPN"
sigmas = [[0, 0, 0, 1, 0]]
epsilon = [0, 0, 1, 0, 0]
"""


def test_fixtures_load_and_match_instances():
    assert load_config(FIX / "desk1.toml").algebra == desk1()
    assert load_config(FIX / "desk2.toml").algebra == desk2()
    assert load_config(FIX / "desk1_rational.toml").module == desk1_module_rational()


def test_phi_pairs_equals_full_matrix():
    assert parse_config(BASE).algebra == desk1()


def test_defaults():
    cfg = parse_config(BASE)
    assert cfg.module is None
    assert cfg.run.seed == 0 and cfg.run.samples == 500 and cfg.run.max_iter == 32
    assert cfg.window.degree_cap == 1 and cfg.window.box == tuple((-1, 1) for _ in range(5))


def test_rational_strings_accepted():
    cfg = parse_config(BASE + '[module]\nxi = ["1/2", "0.25", 0, 0]\nf = [0, 0, 0, 0, 0]\n')
    assert cfg.module.xi[0] * 2 == 1 and cfg.module.xi[1] * 4 == 1


def test_float_rejected_with_position():
    with pytest.raises(ConfigError) as e:
        parse_config(BASE + "[module]\nxi = [0.5, 0, 0, 0]\nf = [0, 0, 0, 0, 0]\n")
    assert e.value.line == 10 and "float" in str(e.value)


def test_unknown_key_and_section_rejected():
    with pytest.raises(ConfigError, match="unknown key algebra.rank") as e:
        parse_config(BASE.replace("m = 5", "m = 5\nrank = 3"))
    assert e.value.line == 4
    with pytest.raises(ConfigError, match=r"unknown section \[extra\]"):
        parse_config(BASE + "[extra]\na = 1\n")


def test_non_antisymmetric_phi_names_entry():
    text = BASE.replace("phi_pairs = [[1, 2, 1]]",
                        "phi = [[0, 1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0]]")
    with pytest.raises(ConfigError, match=r"\(1,2\)") as e:
        parse_config(text)
    assert e.value.line == 4


@pytest.mark.parametrize("bad, where", [
    ('mask = "NNXN"', "mask"),
    ("epsilon = [0, 0, 1, 0]", "epsilon"),
    ('epsilon = [0, 0, "1/2", 0, 0]', "epsilon"),
    ("sigmas = []", "sigmas"),
])
def test_shape_errors_name_the_key(bad, where):
    key = bad.split(" =")[0]
    lines = [bad if ln.startswith(key + " ") else ln for ln in BASE.splitlines()]
    with pytest.raises(ConfigError, match=where):
        parse_config("\n".join(lines) + "\n")


def test_toml_syntax_error_has_line():
    with pytest.raises(ConfigError) as e:
        parse_config(BASE + "[window\n")
    assert e.value.line == 9


def test_dump_parse_round_trip():
    sig, msig = desk1(), desk1_module_rational()
    win = WindowConfig(((-1, 2),) * 5, degree_cap=2, ambient_margin=1)
    run = RunConfig(seed=7, samples=11, max_iter=5, count=3)
    cfg = parse_config(dump_config(sig, msig, win, run))
    assert (cfg.algebra, cfg.module, cfg.window, cfg.run) == (sig, msig, win, run)
    assert config_dict(cfg) == config_dict(parse_config(dump_config(sig, msig, win, run)))


def test_overrides_and_digest():
    cfg = parse_config(BASE)
    new = cfg.with_overrides(seed=3, window_box=2, degree_cap=0)
    assert new.run.seed == 3 and new.window.box[0] == (-2, 2) and new.window.degree_cap == 0
    assert new.digest == cfg.digest
    assert parse_config(BASE + "\n").digest != cfg.digest


def test_missing_file():
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(FIX / "nope.toml")

import pytest

from herzmorrey.config import (
    ExperimentConfig,
    expand_family,
    load_config,
    parse_config_text,
    parse_exponent,
    parse_function,
)
from herzmorrey.errors import ConfigError
from herzmorrey.exponents import Constant, LogDecay, LogDecayShifted, Role
from herzmorrey.functions import ZERO, CharAnnulus, CharBall, GaussBump, Power


def test_parse_exponent_forms():
    assert parse_exponent("const:2") == Constant(2.0)
    assert parse_exponent("logdecay:1.2:0.3") == LogDecay(1.2, 0.3)
    assert parse_exponent("logdecay-shifted:1.2:0.3:0.2:1") == LogDecayShifted(1.2, 0.3, 0.2, 1.0)
    assert parse_exponent("const:0.5", Role.ORDER).role is Role.ORDER


@pytest.mark.parametrize("desc, needle", [
    ("cons:2", "unknown exponent family"),
    ("logdecay:1.2", "takes 2"),
    ("const:x", "decimal number"),
    ("const:0.5", "const:0.5"),
])
def test_parse_exponent_errors_name_the_descriptor(desc, needle):
    with pytest.raises(ConfigError, match=needle):
        parse_exponent(desc)


def test_expand_family():
    assert expand_family("char-annulus:-1..1") == [CharAnnulus(-1), CharAnnulus(0), CharAnnulus(1)]
    assert expand_family("char-ball:3") == [CharBall(3)]
    assert expand_family("power:0.5:-2:2") == [Power(0.5, -2, 2)]
    assert expand_family("gauss:1:0.25") == [GaussBump(1.0, 0.25)]
    assert expand_family("zero") == [ZERO]
    with pytest.raises(ConfigError):
        expand_family("char-annulus:3..1")
    with pytest.raises(ConfigError):
        expand_family("triangle:1")
    with pytest.raises(ConfigError):
        expand_family("gauss:1:0")
    with pytest.raises(ConfigError, match="expected one"):
        parse_function("char-ball:0..2")


def test_load_canonical(canonical_cfg_path):
    cfg = load_config(canonical_cfg_path)
    assert cfg.grid.seed == 7 and cfg.grid.k_min == -40 and cfg.grid.nodes_per_annulus == 32
    assert cfg.space.lam == 0.1 and cfg.space.p1 == cfg.space.p2 == 1.0
    assert [fid for fid, _ in cfg.functions()][:2] == ["char-annulus:-8", "char-annulus:-7"]
    assert len(cfg.functions()) == 17


def test_config_errors_name_the_field():
    with pytest.raises(ConfigError, match=r"grid\.k_min"):
        parse_config_text("[grid]\nk_min = abc\n")
    with pytest.raises(ConfigError, match=r"unknown field grid\.colour"):
        parse_config_text("[grid]\ncolour = red\n")
    with pytest.raises(ConfigError, match=r"unknown section \[extra\]"):
        parse_config_text("[extra]\na = 1\n")
    with pytest.raises(ConfigError, match="k_min must be below"):
        parse_config_text("[grid]\nk_min = 3\nk_max = 2\n")
    with pytest.raises(ConfigError, match="empty"):
        parse_config_text("[family]\nfunctions = ,\n")
    with pytest.raises(ConfigError, match="cannot read"):
        load_config("/nonexistent/none.cfg")


def test_family_multiline_and_overrides():
    cfg = parse_config_text("[family]\nfunctions = char-ball:0\n  gauss:1:0.5, zero\n[space]\nlambda = 0.2\n")
    assert cfg.family == ("char-ball:0", "gauss:1:0.5", "zero")
    assert cfg.space.lam == 0.2
    o = cfg.with_overrides(nodes=8, seed=3, out="x", alpha=0.5)
    assert (o.grid.nodes_per_annulus, o.grid.seed, o.output.dir, o.space.alpha) == (8, 3, "x", 0.5)
    assert o.space.lam == 0.2 and cfg.grid.nodes_per_annulus == 32


def test_hypothesis_violations_are_loadable():
    # p1 > p2 and negative lambda are audited, not rejected
    cfg = parse_config_text("[space]\np1 = 2\np2 = 1\nlambda = -0.5\n")
    assert cfg.space.p1 == 2.0 and cfg.space.lam == -0.5


def test_to_dict_is_plain():
    d = ExperimentConfig().to_dict()
    assert d["family"] == ["char-annulus:-8..8"] and d["grid"]["dimension"] == 2

import json

import pytest

from agentheat.lattice import Column, Point, Rect, Row
from agentheat.physics import Convective, Dirichlet, FluxMode, Insulated, VolumetricLinear
from agentheat.scenario import (
    BUILTINS,
    ScenarioError,
    builtin,
    parse_scenario,
    scenario_to_dict,
    serialize,
    validate,
    with_overrides,
)

MINIMAL = {
    "grid": {"nx": 3, "ny": 3, "h": 0.001},
    "material": {"lambda": 1.5, "c": 1000, "rho": 1500},
    "time": {"dt": 0.005, "steps": 10},
}


def doc(**extra):
    d = json.loads(json.dumps(MINIMAL))
    d.update(extra)
    return json.dumps(d)


def diagnostics_of(text):
    with pytest.raises(ScenarioError) as info:
        parse_scenario(text)
    return info.value.diagnostics


class TestParse:
    def test_minimal_defaults(self):
        s = parse_scenario(doc())
        assert s.boundary == Insulated()
        assert s.flux_mode is FluxMode.HARMONIC
        assert s.grid.nx == 3 and s.material.rho == 1500.0
        assert s.sources == () and s.initial_temperature == 0.0

    def test_rect_out_of_bounds_single_error(self):
        text = doc(material_regions=[{"region": {"type": "rect", "i0": 0, "j0": 0, "i1": 5, "j1": 1},
                                      "material": {"lambda": 0.1, "c": 1, "rho": 1}}])
        diags = diagnostics_of(text)
        assert len(diags) == 1
        assert diags[0].path == "material_regions[0].region"
        assert "rect(0,0,5,1)" in diags[0].message

    def test_syntax_error_has_position(self):
        diags = diagnostics_of('{"grid": {"nx": 3,,}}')
        assert len(diags) == 1
        assert "line 1 column" in diags[0].message

    def test_unknown_field(self):
        diags = diagnostics_of(doc(colour="blue"))
        assert [d.path for d in diags] == ["colour"]

    def test_missing_required(self):
        d = dict(MINIMAL)
        del d["time"]
        diags = diagnostics_of(json.dumps(d))
        assert [d.path for d in diags] == ["time"]

    def test_reports_every_problem(self):
        text = json.dumps({
            "grid": {"nx": 0, "ny": 3, "h": -1},
            "material": {"lambda": 1.5, "c": 1000, "rho": 1500, "mu": 3},
            "time": {"dt": 0.005, "steps": "many"},
            "flux_mode": "arithmetic",
        })
        paths = {d.path for d in diagnostics_of(text)}
        assert {"grid.nx", "grid.h", "material.mu", "time.steps", "flux_mode"} <= paths

    def test_overlapping_dirichlet_rejected(self):
        law = {"type": "dirichlet", "schedule": [[0, 1]]}
        text = doc(sources=[{"region": {"type": "row", "j": 0}, "law": law},
                            {"region": {"type": "column", "i": 0}, "law": law}])
        diags = diagnostics_of(text)
        assert diags[0].path == "sources[1].region"
        assert "overlaps" in diags[0].message

    def test_bad_schedule(self):
        law = {"type": "flux", "schedule": [[1, 0], [1, 5]]}
        diags = diagnostics_of(doc(sources=[{"region": {"type": "all"}, "law": law}]))
        assert "strictly increasing" in diags[0].message

    def test_probe_must_be_point(self):
        diags = diagnostics_of(doc(output={"probes": [{"name": "x", "region": {"type": "row", "j": 0}}]}))
        assert diags[0].path == "output.probes[0].region"

    def test_convective_boundary(self):
        s = parse_scenario(doc(boundary={"type": "convective", "alpha": 10, "t_env": 20}))
        assert s.boundary == Convective(10.0, 20.0)


@pytest.mark.parametrize("name", list(BUILTINS))
def test_round_trip(name):
    s = builtin(name)
    again = parse_scenario(serialize(s))
    assert again == s
    assert serialize(again) == serialize(s)


@pytest.mark.parametrize("name", list(BUILTINS))
def test_builtins_validate_cleanly(name):
    assert validate(builtin(name)) == []


class TestValidate:
    def test_paper_dt_clean(self):
        assert validate(builtin("fig2")) == []

    def test_large_dt_warns(self):
        diags = validate(with_overrides(builtin("fig2"), dt=0.3))
        assert len(diags) == 1
        assert diags[0].level == "warning"
        assert "0.25" in diags[0].message

    def test_no_sources_clean(self):
        assert validate(parse_scenario(doc())) == []

    def test_dirichlet_volumetric_overlap_warns(self):
        s = builtin("fig4")
        from dataclasses import replace
        from agentheat.scenario import SourceSpec

        s = replace(s, sources=s.sources + (SourceSpec(Point(0, 0), Dirichlet(((0.0, 1.0),))),))
        diags = validate(s)
        assert [d.level for d in diags] == ["warning"]
        assert "overlaps a Dirichlet" in diags[0].message


class TestBuiltins:
    def test_shared_constants(self):
        for name in BUILTINS:
            s = builtin(name)
            assert (s.grid.nx, s.grid.ny, s.grid.h) == (41, 41, 0.001)
            assert (s.material.lambda_, s.material.c, s.material.rho) == (1.5, 1000.0, 1500.0)
            assert s.initial_temperature == 0.0
            assert s.boundary == Insulated()
            assert s.dt == 0.005

    def test_fig3(self):
        (src,) = builtin("fig3").sources
        assert src.region == Point(20, 20)
        assert src.law == Dirichlet(((0.0, 50.0),))

    def test_fig2(self):
        (src,) = builtin("fig2").sources
        assert src.region == Row(0)
        assert src.law == Dirichlet(((0.0, 20.0),))

    def test_fig4(self):
        s = builtin("fig4_combustion")
        assert isinstance(s.sources[0].law, VolumetricLinear)
        assert s.initial_overrides == ((Point(20, 20), 50.0),)

    def test_fig5(self):
        ((region, mat),) = builtin("fig5").material_regions
        assert isinstance(region, Rect) and mat.lambda_ == 0.015

    def test_fig6_strip_divides(self):
        s = builtin("fig6")
        ((region, mat),) = s.material_regions
        assert region == Column(20) and mat.lambda_ == 0.015
        assert s.sources[0].region == Column(0)

    def test_unknown(self):
        with pytest.raises(KeyError, match="fig2_linear_source"):
            builtin("fig7")


def test_serialized_keys():
    keys = set(scenario_to_dict(builtin("fig2")))
    assert {"grid", "material", "material_regions", "initial", "sources",
            "boundary", "flux_mode", "time", "output"} <= keys

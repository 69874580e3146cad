import copy

import pytest

BASE_SCENARIO = {
    "transition": {"omega_atom": {"value": 2.7e15, "units": "rad/s"}},
    "dm": {
        "omega": {"value": 1.0, "units": "Hz"},
        "rho_dm": {"value": 0.4, "units": "GeV/cm^3"},
    },
    "scheme": {"variant": "plus", "Q": 5, "N": 1},
    "geometry": {
        "B": {"value": 100.0, "units": "m"},
        "h": "optimize",
        "g": "derived",
    },
    "noise": {"kind": "shot", "n_at": 1e8, "T_int": {"value": 1.0, "units": "day"}},
    "output": {"format": "json"},
}


def make_scenario_dict(**overrides):
    """Deep-copied base scenario with section-level overrides merged in."""
    data = copy.deepcopy(BASE_SCENARIO)
    for key, value in overrides.items():
        if isinstance(value, dict) and key in data and isinstance(data[key], dict):
            merged = copy.deepcopy(data[key])
            merged.update(copy.deepcopy(value))
            data[key] = merged
        else:
            data[key] = copy.deepcopy(value)
    return data


@pytest.fixture
def scenario_dict():
    return make_scenario_dict()

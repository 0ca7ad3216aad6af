import importlib.util
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


def _load(name):
    spec = importlib.util.spec_from_file_location(name, SCRIPTS / f"{name}.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_reproduce_examples(tmp_path):
    mod = _load("reproduce_examples")
    sizes = mod.run(mod.ExampleConfig(tmp_path))
    assert sizes == {"v-poset-rrb": 5, "equivalence-rrb": 7, "v-poset-semilattice": 4,
                     "chain3-graph-bdl": 9}
    assert len(list(tmp_path.glob("*.dot"))) == 4


def test_cycle_search_small():
    mod = _load("five_cycle_search")
    assert mod.run(mod.SearchConfig(max_size=6, cycle_length=4))["found"]
    assert not mod.run(mod.SearchConfig(max_size=6))["found"]


def test_adjunction_sweep_small():
    mod = _load("adjunction_sweep")
    totals = mod.run(mod.SweepConfig(max_poset=2, max_band=2))
    assert totals["pairs"] == 9 and totals["failed"] == 0

import importlib


def test_retinex_imports_cleanly() -> None:
    modules = [
        "histlight.retinex",
        "histlight.retinex.errors",
        "histlight.retinex.objective",
        "histlight.retinex.schemas",
        "histlight.retinex.solver",
        "histlight.retinex.updates",
    ]
    for module in modules:
        assert importlib.import_module(module)

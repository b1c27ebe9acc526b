"""Placeholder; implemented later in the build."""


def __getattr__(name):
    def _stub(*args, **kwargs):
        raise NotImplementedError(f"cylab.experiments.{name} is not implemented yet")
    _stub.__name__ = name
    return _stub

import pytest

from ritzbounds import _kernels


def _available_backends():
    names = ["python"]
    try:
        _kernels.load_backend("cython")
        names.append("cython")
    except ImportError:
        pass
    return names


@pytest.fixture(params=_available_backends())
def kernel_backend(request, monkeypatch):
    """Run a test once per available kernel backend."""
    monkeypatch.setattr(_kernels, "active", _kernels.load_backend(request.param))
    return request.param

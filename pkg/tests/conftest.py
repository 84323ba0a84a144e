from __future__ import annotations

import re

import pytest

from bruhatcup import bits, kernels
from bruhatcup.chains import TensorChain

KERNEL_NAMES = (
    "popcount", "submasks_of_size", "epsilon", "initial_vertex", "delta_terms",
    "steenrod_terms", "add_into", "tensor_boundary", "transpose", "homotopy_defect",
    "complement_defect", "packet_consistent", "appendix_sweep", "enumerate_segments",
)

_TERM = re.compile(r"([+-]?)(?:(\d+)\*)?([0-9]+)⊗([0-9]+)")


def tc(text: str) -> TensorChain:
    """Parse ``"012⊗01 - 02⊗012 + 2*012⊗12"``; vertices are single digits."""
    out = TensorChain()
    compact = text.replace(" ", "")
    pos = 0
    for m in _TERM.finditer(compact):
        if m.start() != pos:
            raise ValueError(f"cannot parse {text!r} near {compact[pos:]!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        out = out + TensorChain.term(bits.parse(m.group(3)), bits.parse(m.group(4)), sign * coef)
    if pos != len(compact):
        raise ValueError(f"trailing input in {text!r}")
    return out


@pytest.fixture(params=[m.BACKEND for m in kernels.backends()])
def backend(request, monkeypatch):
    """Route every kernel call through one backend for the duration of a test."""
    module = next(m for m in kernels.backends() if m.BACKEND == request.param)
    for name in KERNEL_NAMES:
        monkeypatch.setattr(kernels, name, getattr(module, name))
    monkeypatch.setattr(kernels, "BACKEND", module.BACKEND)
    return module


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        terminalreporter.write_line(f"kernel backend: {kernels.BACKEND}")
        for line in RESULTS:
            terminalreporter.write_line(line)

from ._core import (
    FundsolError,
    Solution,
    Symbol,
    TestFunction,
    Variant,
    adjudicate,
    leray_window,
    proof_constants,
)

__all__ = [
    "FundsolError",
    "Solution",
    "Symbol",
    "TestFunction",
    "Variant",
    "adjudicate",
    "leray_window",
    "proof_constants",
]

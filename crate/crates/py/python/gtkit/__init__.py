from ._gtkit import (
    BudgetExceeded,
    System,
    fiber_probe,
    phi,
    strongly_nilpotent,
    verify,
)

__all__ = [
    "BudgetExceeded",
    "System",
    "fiber_probe",
    "phi",
    "strongly_nilpotent",
    "verify",
]

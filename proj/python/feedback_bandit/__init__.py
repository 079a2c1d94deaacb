"""Python bindings for the feedback_bandit core library."""

from ._core import (
    FeedbackError,
    UntestableLogError,
    chi2_survival,
    estimate,
    llr_test,
    lock_in_walk,
    regret,
    run_command,
    simulate,
)

__all__ = [
    "FeedbackError",
    "UntestableLogError",
    "chi2_survival",
    "estimate",
    "llr_test",
    "lock_in_walk",
    "regret",
    "run_command",
    "simulate",
]

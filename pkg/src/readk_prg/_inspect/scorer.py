"""Scorer for fooling measurements in Inspect AI."""

from fractions import Fraction

from inspect_ai.scorer import Score, Scorer, Target, accuracy, scorer, stderr
from inspect_ai.solver import TaskState


class MissingFoolingReportError(Exception):
    """Raised when the solver left no fooling report in the metadata."""


@scorer(metrics=[accuracy(), stderr()])
def fooling_scorer() -> Scorer:
    """Score 1.0 when the measured error stays within the generator's ``eps``.

    Exhaustive reports compare the exact error. Sampled reports pass unless
    the whole confidence interval lies above ``eps``.

    Returns:
        Scorer reading the ``fooling_report`` left by the ``measure`` solver.
    """

    async def score(state: TaskState, target: Target) -> Score:  # noqa: ARG001
        report = state.metadata.get("fooling_report")
        if not report:
            raise MissingFoolingReportError("fooling_report not found in metadata")

        eps = report["eps"]
        if report["method"] == "exhaustive":
            passed = eps is None or Fraction(report["error"]) <= Fraction(eps)
        else:
            passed = eps is None or report["ci_low"] <= eps

        explanation = (
            f"{report['method']} error {report['error']} "
            f"({report['error_float']:.6g}) against eps={eps}; "
            f"Pr_U={report['uniform_probability']} "
            f"Pr_G={report['generator_probability']}"
        )
        if report["method"] == "sampled":
            explanation += (
                f"; {report['confidence']:.0%} CI "
                f"[{report['ci_low']:.6g}, {report['ci_high']:.6g}]"
            )
        if not state.metadata.get("guaranteed", True):
            explanation += "; toy mode carries no error guarantee"

        return Score(
            value=1.0 if passed else 0.0,
            answer="PASS" if passed else "FAIL",
            explanation=explanation,
            metadata={"fooling_report": report},
        )

    return score

"""Solver that runs a fooling measurement instead of calling a model."""

import asyncio

from inspect_ai.solver import Generate, Solver, TaskState, solver

from readk_prg._config import GeneratorSpec, RunConfig
from readk_prg._generators import Mode
from readk_prg._harness import build_generator, measure as measure_fooling
from readk_prg._programs import program_from_dict


class MissingSampleDataError(Exception):
    """Raised when a sample lacks the program, generator or config metadata."""


@solver
def measure() -> Solver:
    """Rebuild the sample's program and generator and measure the fooling error.

    The report is stored under ``fooling_report`` in the state metadata.
    """

    async def solve(state: TaskState, generate: Generate) -> TaskState:  # noqa: ARG001
        for key in ("program", "generator", "config"):
            if key not in state.metadata:
                raise MissingSampleDataError(f"{key} not found in metadata")

        B = program_from_dict(state.metadata["program"], source=str(state.sample_id))
        config = RunConfig.model_validate(state.metadata["config"])
        recipe = GeneratorSpec.model_validate(state.metadata["generator"])
        G = build_generator(recipe, B, config)

        report = await asyncio.to_thread(
            measure_fooling,
            B,
            G,
            config,
            state.metadata.get("method", "auto"),
            program_id=state.metadata.get("program_id", str(state.sample_id)),
            generator_id=recipe.name,
        )
        state.metadata["fooling_report"] = report.to_dict()
        state.metadata["guaranteed"] = G.mode is not Mode.TOY
        return state

    return solve

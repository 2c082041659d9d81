from .app import (
    create_app,
    run_fields,
    run_propagator,
    run_scatter,
    run_velocity,
    run_verify,
)

__all__ = [
    "create_app", "run_scatter", "run_velocity", "run_fields",
    "run_propagator", "run_verify",
]

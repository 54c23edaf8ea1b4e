"""Bohmian trajectories of two entangled coherent-state qubits.

A planar system of two uncoupled harmonic modes guided by an entangled
superposition of displaced coherent packets.  The package provides the
closed-form guiding velocity field and its wavefunction-gradient oracle,
adaptive high-order trajectory integration (including an extended-precision
mode), entanglement measures, nodal-point/X-point machinery, stretching
numbers and finite-time Lyapunov diagnostics, Fourier analysis of periodic
orbits, and a scenario runner with deterministic CSV/JSON output.
"""

__version__ = "0.1.0"

from .errors import (BohmiumError, ConfigParse, DomainError, IncompleteWindow,
                     InsufficientSpan, MaxStepsExceeded, NoConvergence,
                     NodalDegeneracy, NodeProximity, NonUniformSampling,
                     NoPeriodFound, OnlyNodeRoot, OverflowGuard,
                     StepFloorReached, UnknownScenario)
from .model import (AuxTerms, OscillatorParams, PhasePoint, StateKind,
                    SystemConfig, aux_terms, bell_config, coherent_amplitude,
                    coherent_value, overlap, state_peak_scale, state_value)
from .velocity import (Jacobian2, Velocity, bohmian_velocity, make_field,
                       make_field_with_jacobian, oracle_velocity,
                       velocity_jacobian)
from .entanglement import (EntanglementReport, entanglement_entropy,
                           linear_entropy_numeric, linear_entropy_psi,
                           linear_entropy_qubit)
from .integrate import (DeviationLog, Flag, IntegratorConfig, Method,
                        Precision, Trajectory, integrate,
                        integrate_with_deviation)
from .chaos import (ChaosRecord, Classification, chaos_record, detect_events,
                    derailment_time, lcn_classification, shadow_deviation,
                    stretching_series)
from .nodal import (NodalPoint, XPoint, find_x_point, find_x_points,
                    nodal_position, nodal_positions, nodal_ratio,
                    nodal_velocity, npxpc_encounters)
from .spectral import (SpectrumReport, harmonic_spectrum, period_estimate,
                       range_of_motion)

"""Entropic correlation measures of two-mode Gaussian states.

Quantum mutual information, the measurement-induced disturbance under
photon counting, the Gaussian AMID, Gaussian discord and the Gaussian
entanglement of formation of symmetric squeezed thermal states. All values
are in nats.
"""
__version__ = "0.1.0"

from .errors import (ConvergenceError, Degenerate, DegenerateMarginal, DomainError,
                     GaussDisturbError, NoCrossing, NonPhysical, OptimizerDisagreement,
                     OutOfRange, ParseError, PrecisionError, SamplingExhausted, Singular)
from .linalg import SymplecticSpectrum, det2, det4, inv2, matmul, symplectic_eigenvalues
from .states import (Family, PhysicalityReport, StandardFormCM, make_family, pt_nu_minus,
                     to_standard_form, validate)
from .entropy import entropy_F, quantum_mutual_information
from .fock import (JointPhotonDistribution, PhotonGenParams, joint_photon_distribution, mid,
                   mid_details, shannon_entropy)
from .povm import (Branch, GaussianSeed, GaussianSeedPair, MeasurementInvariants, OptResult,
                   classical_mi_at_seed, gaussian_amid, gaussian_classical_mi,
                   phase_optimized_I4, sts_gamid_closed)
from .discord import gaussian_discord, sts_discord_closed, two_way_discord
from .eof import EofParams, check_sandwich, eof_symmetric, gamid_upper_bound
from .sampler import PurityMode, SamplerConfig, random_state, sample_states
from .report import MeasureConfig, MeasureReport, measures

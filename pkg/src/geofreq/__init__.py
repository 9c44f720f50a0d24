"""Geometric frequency and flux-field decomposition of multi-phase signals."""

from .algebra import (
    Multivector,
    bivector_apply,
    decompose_matrix,
    embed3,
    hodge3,
    wedge,
)
from .classify import (
    ConditionLabel,
    FeatureVector,
    classify_components,
    classify_samples,
    features_from_components,
    features_from_samples,
)
from .errors import CsvFormatError, GeofreqError, SingularMagnitudeError
from .fields import (
    AffineField,
    ComponentsSeries,
    FieldDecomposition,
    FrequencyComponents,
    VelocityField,
    components_series,
    decompose,
    fd_jacobian,
    frequency_components,
    helmholtz_residual,
    integrate_streamline,
    lagrange_derivative,
    make_field,
)
from .frequency import (
    FrequencySeries,
    GeometricFrequency,
    frequency_series_from_samples,
    geometric_frequency,
    geometric_frequency_series,
    reconstruct_derivative,
)
from .signals import (
    Balanced,
    Dc,
    Harmonic,
    Overtone,
    SampleGrid,
    SignalBundle,
    SignalSpec,
    Unbalanced,
    clarke_forward,
    clarke_inverse,
    flux_from_samples,
    numeric_derivative,
    spec_dim,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

"""Khovanov-type spectral sequences for knot diagrams over GF(2).

The package builds the cube of resolutions of a planar diagram, assembles
the filtered chain complex (reduced or unreduced flavor), and computes
the pages of the induced spectral sequence together with collapse and
invariance diagnostics.
"""

from .diagram import (
    ParseError,
    PlanarDiagram,
    StructureError,
    is_alternating,
    load_corpus,
    mirror,
    parse_pd,
    reidemeister1,
    reidemeister2,
    render,
)
from .filtered import FilteredComplex, SizeCapError, build, verify_d_squared
from .spectral import (
    PageTable,
    SpectralResult,
    Verdict,
    basepoint_sweep,
    compare_pages,
    compute,
    khovanov_oracle,
    page,
    total_homology,
)
from .tqft import (
    Generator,
    GeneratorWord,
    GradingShift,
    check_triangle,
    evaluate_word,
    grading_shift_surface,
    grading_shift_word,
)

__version__ = "0.1.0"

__all__ = [
    "ParseError",
    "PlanarDiagram",
    "StructureError",
    "is_alternating",
    "load_corpus",
    "mirror",
    "parse_pd",
    "reidemeister1",
    "reidemeister2",
    "render",
    "FilteredComplex",
    "SizeCapError",
    "build",
    "verify_d_squared",
    "PageTable",
    "SpectralResult",
    "Verdict",
    "basepoint_sweep",
    "compare_pages",
    "compute",
    "khovanov_oracle",
    "page",
    "total_homology",
    "Generator",
    "GeneratorWord",
    "GradingShift",
    "check_triangle",
    "evaluate_word",
    "grading_shift_word",
    "grading_shift_surface",
    "__version__",
]

"""Exact workbench for Courant algebroids, foliated reductions and T-duality.

The heavy lifting lives in the C++ extension ``courant._courant``; this
package re-exports it and adds small JSON conveniences.
"""

import json

from ._courant import (  # noqa: F401
    Chart,
    DifferentialForm,
    GeneralizedSection,
    Polynomial,
    TwistedCourant,
    VectorField,
    courant_axioms_check,
    derivation_D,
    dorfman,
    example_document,
    ext_d,
    interior,
    lie_bracket,
    lie_derivative,
    pairing,
    run_command,
    wedge,
)


def example(name, **params):
    """Return a packaged example problem document as a dict."""
    return json.loads(example_document(name, {k: str(v) for k, v in params.items()}))


def run(command, document, **kwargs):
    """Run a workbench command on a document (dict or JSON string)."""
    if not isinstance(document, str):
        document = json.dumps(document)
    return json.loads(run_command(command, document, **kwargs))

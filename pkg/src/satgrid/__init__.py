"""satgrid: cumulative-sum tables on small lattices, sign-based one-sided
slope analysis, and corner-weight integration over rectilinear regions
and lattice curves.

Modules:

* ``grid``: dense scalar fields, boxes, reference box/cell sums, file I/O.
* ``sat``: prefix-sum tables, corner-rule box queries, GRDS persistence.
* ``detach``: one-sided sign limits, their classification, tendencies,
  extrema, and the probe fixtures that exercise them.
* ``green``: rectilinear cell domains, corner weights, and exact
  integration of a field over a domain from its prefix table.
* ``slant``: lattice curves, stepwise tendencies, partial domains, and
  curve integrals assembled from corner weights.
* ``bench``: paired latency measurements for the query paths.
* ``cli``: the ``python -m satgrid`` command surface.
"""

from ._kernels import USING_COMPILED

__all__ = ["USING_COMPILED"]
__version__ = "0.1.0"

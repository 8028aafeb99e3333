"""Exact tools for a mod-4 sliceness obstruction of 2-component links.

Submodules:

- ``diagram``: PD-code link diagrams, signs, smoothings, linking numbers.
- ``braids``: braid-word closures as PD diagrams.
- ``conway``: Conway polynomial by skein recursion; integer beta oracle.
- ``seifert``: Seifert matrices via braid form; determinant route to the
  Conway polynomial.
- ``movies``: validated move scripts ending at the 2-component unlink,
  self-intersection records, phi and the integer engine invariant.
- ``search``: best-effort search for unlinking scripts.
- ``bundle``: Klein four-group, torus w2 lemma, glued 4-manifold models,
  Pontryagin squares, realizability and gluing checks.
- ``corpus``: fixture corpus loading and sign calibration.
- ``cli``: the ``sato4`` command line front end.

All arithmetic is exact; no floating point is used anywhere.
"""

from .diagram import Crossing, LinkDiagram, parse_pd

__all__ = ["Crossing", "LinkDiagram", "parse_pd"]

__version__ = "0.1.0"

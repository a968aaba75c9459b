"""
Burst-deletion correcting q-ary codes.

Library package with no Django dependency. The ``api`` app and the
management commands drive it; everything here takes an explicit ``Params``.
"""

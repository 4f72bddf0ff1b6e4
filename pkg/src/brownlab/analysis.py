"""Lazily computed bundle of everything known about one ``(G, p)``."""

from __future__ import annotations

from functools import cached_property

from . import gcomplex
from .catalog import parse_group_spec
from .permgroup import (check_prime, is_strongly_p_embedded, normalizer, p_part,
                        sylow_subgroup)
from .psubgroups import bouc_filter, enumerate_p_subgroups, node_orbits, quillen_filter
from .weakhom import weakhom_group


class Analysis:
    def __init__(self, spec, p, group=None, max_order=None):
        check_prime(p)
        self.spec = spec
        self.p = p
        self.group = group if group is not None else parse_group_spec(spec, max_order)

    @property
    def p_divides(self):
        return self.group.order % self.p == 0

    @property
    def sylow_order(self):
        return p_part(self.group.order, self.p)

    @cached_property
    def sylow(self):
        return sylow_subgroup(self.group, self.p)

    @cached_property
    def sylow_is_normal(self):
        return normalizer(self.group, self.sylow).order == self.group.order

    @cached_property
    def poset(self):
        return enumerate_p_subgroups(self.group, self.p)

    @cached_property
    def quillen(self):
        return quillen_filter(self.poset)

    @cached_property
    def bouc(self):
        return bouc_filter(self.poset)

    @cached_property
    def orbits(self):
        return node_orbits(self.poset)

    @cached_property
    def complex(self):
        return gcomplex.order_complex(self.poset)

    @cached_property
    def cover(self):
        if self.poset.empty:
            return None
        return gcomplex.sub_complex_Y(self.complex, self.sylow)

    @cached_property
    def homology(self):
        return gcomplex.homology(self.complex)

    @cached_property
    def reduced_euler(self):
        return gcomplex.reduced_euler(self.complex)

    @cached_property
    def orbit_space(self):
        return gcomplex.orbit_space(self.complex)

    @cached_property
    def quotient_homology(self):
        return gcomplex.homology(self.orbit_space[0])

    @cached_property
    def components(self):
        return gcomplex.connected_components(self.complex)

    @cached_property
    def strongly_embedded(self):
        return [is_strongly_p_embedded(self.group, stab, self.p)
                for _, stab in self.components]

    def variant_homology(self, kind):
        poset = {"brown": self.poset, "quillen": self.quillen, "bouc": self.bouc}[kind]
        return gcomplex.homology(gcomplex.order_complex(poset))

    @cached_property
    def weakhoms(self):
        return weakhom_group(self.group, self.sylow)

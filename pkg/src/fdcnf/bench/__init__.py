"""Benchmark instance generators with independent solution verifiers."""

from dataclasses import dataclass, field


@dataclass
class BenchInstance:
    family: str
    params: tuple
    text: str
    verifier: object = None
    notes: list = field(default_factory=list)

    def verify(self, values):
        """(ok, message) for a decoded solution, checked without the encoding."""
        return self.verifier(values)


def generate(family, *params, **opts):
    from . import fractions, girth, partition
    gens = {"girth5": girth.gen_girth, "fractions": fractions.gen_fractions,
            "partition": partition.gen_partition}
    if family not in gens:
        raise ValueError("unknown benchmark family %r (expected one of %s)"
                         % (family, ", ".join(sorted(gens))))
    return gens[family](*params, **opts)


FAMILIES = ("girth5", "fractions", "partition")

"""Print the headline numbers computed from scratch by the package."""
from hodge_limits.cohomology_rings import FiberMiddleData, coker_rho_rank, load_ring
from hodge_limits.degeneration import assemble_central_fiber
from hodge_limits.severi import (get_datum, limit_mhs_summary, luna_slice_check,
                                 segre_cy_crosscheck)


def main() -> None:
    for name in ("Segre", "Gr26", "OP2"):
        s = get_datum(name)
        summ = limit_mhs_summary(s)
        luna = luna_slice_check(s).data
        print(f"{name}: m = {s.m}, V Hodge vector {summ.V_hodge_vector}, "
              f"({luna['sym3']}-1)-{luna['orbit_codim_term']} = {luna['sections']}")
    cc = segre_cy_crosscheck()
    print(f"Segre threefold: chi = {cc.data['chi']}, h21 = {cc.data['h21']}")
    gr = load_ring("Gr26")
    print(f"Gr(2,6): s3*s1 = {gr.gen('s3') * gr.gen('s1')}, "
          f"s21*s1 = {gr.gen('s21') * gr.gen('s1')}")
    for ring_name, div, d in (("P2xP2", "3*H1+3*H2", 4), ("Gr26", "3*s1", 8)):
        ring = load_ring(ring_name)
        print(f"coker rho on {ring_name}: "
              f"{coker_rho_rank(ring, ring.element(div), FiberMiddleData(d)).rank}")
    for name in ("Segre", "Gr26"):
        asm = assemble_central_fiber(name)
        print(f"{name} central fiber: Gr^W H^m = {asm.graded}, CS ranks {asm.cs.ranks}")


if __name__ == "__main__":
    main()

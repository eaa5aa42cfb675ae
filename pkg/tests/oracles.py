"""Independent reference formulas and circuit builders used by the tests.

Everything here is written from the closed-form expressions directly, on
purpose in a different style than the package, so the two routes can be
compared without sharing code paths.
"""

import math

K_BOLTZ = 1.380649e-23


def golden_section_min(fun, lo, hi, iters=90):
    """Minimize a unimodal scalar function on [lo, hi]."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = fun(d)
    return 0.5 * (a + b)


def output_snr_ref(z_r, z_l, gain, n_na, temperature, s_voc):
    """Loaded receiver SNR written with complex dividers, no shared helpers."""
    w = z_l / (z_r + z_l)
    u = z_r / (z_r + z_l)
    noise = n_na + gain**2 * abs(u) ** 2 * 2.0 * K_BOLTZ * temperature * z_l.real
    return gain**2 * abs(w) ** 2 * s_voc / noise


def snr_ratio_ref(z_r, gain, n_na, temperature):
    """Open-circuit over matched SNR for a receiver with amplifier noise."""
    re = z_r.real
    return 4.0 * re**2 / abs(z_r) ** 2 + gain**2 * 2.0 * K_BOLTZ * temperature * re / n_na


def friis_gain_ref(g, r_s, r_l, r_o):
    if math.isinf(r_l):
        return g * g * r_s / r_o
    return (g * g * r_s / r_o) * (r_l / (r_s + r_l)) ** 2


def output_snr_friis_ref(v_s, g, r_s, r_l, n_na, temperature):
    two_kt = 2.0 * K_BOLTZ * temperature
    v2 = abs(v_s) ** 2
    if math.isinf(r_l):
        return g * g * v2 / (two_kt * r_s * g * g + n_na)
    w = r_l / (r_s + r_l)
    r_par = r_s * r_l / (r_s + r_l)
    return g * g * v2 * w * w / (two_kt * r_par * g * g + n_na)


def noise_factor_ref(g, r_s, r_l, n_na, temperature):
    two_kt = 2.0 * K_BOLTZ * temperature
    if math.isinf(r_l):
        return 1.0 + n_na / (two_kt * r_s * g * g)
    lead = (r_s + r_l) / r_l
    return lead * (1.0 + (n_na / (two_kt * g * g)) * ((r_s + r_l) / (r_s * r_l)))


def _fmt_c(z):
    return f"{z.real!r} {z.imag!r}"


def buffer_netlist(v_oc, z_s, a, z_id, z_cm, r_out):
    """Netlist for the follower: source into node 2, output fed back at node 3.

    Node 2 is the non-inverting input, node 3 the output (tied to the
    inverting input). Returns text for the nodal solver; i_source is minus
    the battery branch current.
    """
    v_oc = complex(v_oc)
    z_s = complex(z_s)
    lines = [f"V1 1 0 {_fmt_c(v_oc)}", f"Zs 1 2 {_fmt_c(z_s)}"]
    if z_id is not None:
        lines.append(f"Zid 2 3 {_fmt_c(complex(z_id))}")
    if z_cm is not None:
        lines.append(f"Zcp 2 0 {_fmt_c(complex(z_cm))}")
        lines.append(f"Zcn 3 0 {_fmt_c(complex(z_cm))}")
    if r_out > 0:
        lines.append(f"E1 4 0 2 3 {a!r}")
        lines.append(f"Zo 4 3 {r_out!r} 0.0")
    else:
        lines.append(f"E1 3 0 2 3 {a!r}")
    return "\n".join(lines)


def constant_current_netlist(v_oc, z_s, a, z_id, z_cm, r_out, v_c, r_c):
    """Netlist for the feedback stage: antenna between output and the
    inverting input, non-inverting input grounded.

    Returns (text, n_node, o_node); i_source is minus the antenna battery
    branch current.
    """
    v_oc = complex(v_oc)
    z_s = complex(z_s)
    v_c = complex(v_c)
    lines = []
    n_node, o_node = 1, 2
    next_node = 3
    if not math.isinf(r_c):
        bias = next_node
        next_node += 1
        lines.append(f"Vc {bias} 0 {_fmt_c(v_c)}")
        lines.append(f"Zc {bias} {n_node} {r_c!r} 0.0")
    if z_id is not None:
        lines.append(f"Zid {n_node} 0 {_fmt_c(complex(z_id))}")
    if z_cm is not None:
        lines.append(f"Zcm {n_node} 0 {_fmt_c(complex(z_cm))}")
    emf_plus = next_node
    next_node += 1
    lines.append(f"Vs {emf_plus} {n_node} {_fmt_c(v_oc)}")
    lines.append(f"Zs {emf_plus} {o_node} {_fmt_c(z_s)}")
    if r_out > 0:
        amp_out = next_node
        next_node += 1
        lines.append(f"E1 {amp_out} 0 0 {n_node} {a!r}")
        lines.append(f"Zo {amp_out} {o_node} {r_out!r} 0.0")
    else:
        lines.append(f"E1 {o_node} 0 0 {n_node} {a!r}")
    return "\n".join(lines), n_node, o_node


def renumber_netlist(text):
    """Relabel node ids in first-seen order so they are contiguous.

    Returns (new_text, mapping old->new).
    """
    mapping = {0: 0}
    out = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            out.append(line)
            continue
        tokens = stripped.split()
        n_refs = 4 if tokens[0][0].upper() == "E" else 2
        for pos in range(1, 1 + n_refs):
            old = int(tokens[pos])
            if old not in mapping:
                mapping[old] = len(mapping)
            tokens[pos] = str(mapping[old])
        out.append(" ".join(tokens))
    return "\n".join(out), mapping

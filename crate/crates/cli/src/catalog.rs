use std::fmt::Write as _;

use airy_core::config::{datum_keys, family_keys, DATUM_KINDS, FAMILIES};
use airy_core::T_REV;

/// One catalog entry: a boundary family, the keys it needs and a minimal
/// scenario file that exercises it.
pub struct CatalogEntry {
    pub family: &'static str,
    pub description: &'static str,
    pub required_keys: &'static [&'static str],
    pub example: String,
}

fn describe(family: &str) -> &'static str {
    match family {
        "periodic" => "u(0) = u(1), u_x(0) = u_x(1), u_xx(0) = u_xx(1)",
        "dirichlet" => "u(0) = u(1) = u_x(1) = 0",
        "mixed" => "u(0) = u(1) = 0, u_x(0) = gamma u_x(1), 0 < gamma < 1",
        "pseudo_periodic" => "beta_j d^j u(0) = d^j u(1) for j = 0, 1, 2",
        "quasi_periodic" => "d^j u(0) = e^{i theta} d^j u(1) for j = 0, 1, 2",
        _ => "u(0) = e^{i theta} u(1) plus two rows over (u, u_x, u_xx) at both ends",
    }
}

fn example_values(family: &str) -> &'static str {
    match family {
        "mixed" => "bc.gamma = 0.5\n",
        "pseudo_periodic" => "bc.beta0 = 1,0\nbc.beta1 = 2,0\nbc.beta2 = 2,0\n",
        "quasi_periodic" => "bc.theta = 1.0\n",
        "quasi_coupled" => {
            "bc.theta = 1.0471975511965976\n\
             bc.row1 = 0,0; 1,0; 0,0; 0,0; -1,-1.7320508075688772; 0,0\n\
             bc.row2 = 0,0; 0,0; 1,0; 0,0; 0,0; -0.5,-0.8660254037844386\n"
        }
        _ => "",
    }
}

pub fn entries() -> Vec<CatalogEntry> {
    FAMILIES
        .iter()
        .map(|&family| {
            let datum = if family == "periodic" || family == "quasi_periodic" {
                "kind = bump\npower = 6\n"
            } else {
                "kind = poly\ncoeffs = 0, 0, 1, -2, 1\n"
            };
            let example = format!(
                "[problem]\nbc.family = {family}\n{}\n[datum]\n{datum}\n[numerics]\nN = 32\nP = 64\ndt = 1e-5\nT = 1e-3\nsnapshots = 2\n",
                example_values(family)
            );
            CatalogEntry {
                family,
                description: describe(family),
                required_keys: family_keys(family).expect("catalog families are known"),
                example,
            }
        })
        .collect()
}

/// Human-readable catalog of boundary families and config keys.
pub fn list_scenarios() -> String {
    let mut out = String::from("Boundary families (set with `bc.family` in [problem]):\n\n");
    for entry in entries() {
        let keys = if entry.required_keys.is_empty() {
            "none".to_string()
        } else {
            entry.required_keys.join(", ")
        };
        let _ = writeln!(
            out,
            "  {:<16} {}\n  {:<16} required keys: {keys}",
            entry.family, entry.description, ""
        );
    }
    out.push_str("\nInitial data (`datum.kind` in [datum]):\n\n");
    for kind in DATUM_KINDS {
        let keys = datum_keys(kind).expect("listed kinds are known").join(", ");
        let _ = writeln!(out, "  {kind:<16} required keys: {keys}");
    }
    out.push_str(
        "\nNumerics: numerics.N and numerics.T are required; numerics.P (256), numerics.dt (T/1000),\n\
         numerics.snapshots (4), numerics.levels (3) and numerics.cesaro (false) are optional.\n\
         Analysis: analysis.q_max (8), analysis.n_lo, analysis.n_hi, analysis.jump_ratio (5),\n\
         analysis.jump_floor (0.05), analysis.jump_window (1).\n\
         Set problem.reference = true to compare against the reference solver. Families other than\n\
         periodic and quasi_periodic always run it, since their corrections are driven by its traces.\n",
    );
    let _ = write!(
        out,
        "\nRevival time T_rev = 1/(4 pi^2) = {T_REV:.12}\n\
         With k_n = 2 pi n the phase k_n^3 t = 8 pi^3 n^3 t equals 2 pi n^3 p/q exactly when\n\
         t = (p/q) T_rev, so the propagator e^(i k_n^3 t) is q-periodic in n at those times.\n"
    );
    out
}

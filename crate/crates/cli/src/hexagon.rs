//! ASCII picture of the singular-locus graph: six fixed circles `C_sigma`
//! on a hexagon, nine strata `L_ij` as its sides and long diagonals.

use su3orb::eschenburg6::SingularLocusReport;
use su3orb::weights::Permutation3 as P;

fn vertex(r: &SingularLocusReport, s: P) -> String {
    let v = r.vertex(s);
    let mark = if v.singular { "*" } else { "" };
    format!("{s} {}{mark}", v.group)
}

fn edge(r: &SingularLocusReport, i: u8, j: u8) -> String {
    match r.edge(i, j) {
        Some(e) => {
            let mark = if e.singular { "*" } else { "" };
            format!("L{i}{j} {}{mark}", e.group)
        }
        None => format!("L{i}{j} ?"),
    }
}

/// Singular strata are marked with `*`.
pub fn render(r: &SingularLocusReport) -> String {
    let w = 22;
    let c = |s: String| format!("{s:^w$}", w = w * 2 + 4);
    let pair = |l: String, rr: String| format!("{l:<w$}    {rr:>w$}", w = w);
    let mut out = Vec::new();
    out.push(c(vertex(r, P::ID)));
    out.push(pair(format!("{}  /", edge(r, 1, 1)), format!("\\  {}", edge(r, 3, 3))));
    out.push(pair(vertex(r, P::P23), vertex(r, P::P12)));
    out.push(pair("   |".into(), "|   ".into()));
    out.push(pair(format!("   | {}", edge(r, 2, 3)), format!("{} |   ", edge(r, 2, 1))));
    out.push(pair("   |".into(), "|   ".into()));
    out.push(pair(vertex(r, P::P123), vertex(r, P::P132)));
    out.push(pair(format!("{}  \\", edge(r, 3, 1)), format!("/  {}", edge(r, 1, 3))));
    out.push(c(vertex(r, P::P13)));
    out.push(String::new());
    out.push("diagonals:".into());
    for (i, j, a, b) in [(2, 2, P::ID, P::P13), (1, 2, P::P12, P::P123), (3, 2, P::P132, P::P23)] {
        out.push(format!("  {a} -- {b}: {}", edge(r, i, j)));
    }
    let mut s = out
        .into_iter()
        .map(|l| l.trim_end().to_string())
        .collect::<Vec<_>>()
        .join("\n");
    s.push('\n');
    s
}

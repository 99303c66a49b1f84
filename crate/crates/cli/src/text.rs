//! Plain-text rendering of reports.

use std::fmt::Write;

use crate::report::*;

fn list<T: ToString>(xs: &[T]) -> String {
    format!("({})", xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn set(ps: &Points) -> String {
    format!("{{{}}}", ps.iter().map(|p| list(p)).collect::<Vec<_>>().join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render(r: &Report) -> String {
    match r.command {
        Command::MixedVolume => {
            return r.mixed_volume.as_ref().map_or_else(String::new, |mv| format!("{}\n", mv.total));
        }
        Command::Connectivity => {
            return r.connectivity.as_ref().map_or_else(String::new, |c| format!("{}\n", c.connected));
        }
        Command::Analyze | Command::Monodromy => {}
    }
    let mut out = String::new();
    let w = &mut out;
    if let Some(input) = &r.input {
        let _ = writeln!(w, "input (n = {})", input.n);
        for (i, s) in input.supports.iter().enumerate() {
            let label = input.labels.as_ref().map_or_else(|| format!("A{}", i + 1), |l| l[i].clone());
            let _ = writeln!(w, "  {label} = {}", set(s));
        }
    }
    if let Some(red) = &r.reduction {
        let _ = writeln!(w, "reduction");
        let _ = writeln!(w, "  index m = {}", red.index);
        let _ = writeln!(w, "  quotient invariants = {}", list(&red.quotient_invariants));
        let basis: Vec<String> = red.lattice_basis.iter().map(|c| list(c)).collect();
        let _ = writeln!(w, "  lattice basis = [{}]", basis.join(", "));
        for (i, s) in red.reduced.iter().enumerate() {
            let _ = writeln!(w, "  reduced A{} = {}", i + 1, set(s));
        }
    }
    if let Some(mv) = &r.mixed_volume {
        let _ = writeln!(w, "mixed volume = {}", mv.total);
        if let Some(d) = &mv.reduced {
            let _ = writeln!(w, "reduced mixed volume d = {d}");
        }
    }
    if let Some(f) = &r.flags {
        let opt = |b: Option<bool>| b.map_or("n/a", yes);
        let _ = writeln!(
            w,
            "flags: reduced {}, irreducible {}, analogous {}, ample {}",
            yes(f.reduced),
            yes(f.irreducible),
            opt(f.analogous),
            opt(f.ample)
        );
    }
    if let Some(rows) = &r.essential {
        let _ = writeln!(w, "essential covectors of the reduced tuple ({})", rows.len());
        let _ = writeln!(w, "  {:<14} {:<10} {:>4} {:>4} {:>4} {:>4} {:>5}", "gamma", "K", "d'", "d''", "d", "E0", "tuple");
        for e in rows {
            let k: Vec<usize> = e.k_gamma.iter().map(|i| i + 1).collect();
            let _ = writeln!(
                w,
                "  {:<14} {:<10} {:>4} {:>4} {:>4} {:>4} {:>5}",
                list(&e.gamma),
                list(&k),
                e.d_prime,
                e.d_double_prime,
                e.d_gamma,
                yes(e.in_e0),
                e.tuple_id
            );
        }
    }
    if let Some(v) = &r.verdict {
        let g = &v.expected_group;
        let _ = writeln!(w, "verdict: {}", v.name);
        let _ = writeln!(
            w,
            "  expected group (quotient {}) wr S_{}: order {} on {} roots",
            list(&g.quotient_invariants),
            g.d,
            g.expected_order,
            g.total_roots
        );
        if let Some(c) = &v.condition {
            let _ = writeln!(w, "  sufficient condition: {c}");
        }
        if let Some(wit) = &v.witness {
            let _ = writeln!(
                w,
                "  witness: b = {}, p = {} (divides every d_gamma (gamma.b): {})",
                list(&wit.b),
                wit.p,
                yes(wit.divides_each_covector)
            );
        }
        if let Some(gap) = &v.gap {
            let idx = |i: &Option<Int>| i.as_ref().map_or("infinite".to_string(), ToString::to_string);
            let _ = writeln!(w, "  facet lattice index {}, grouped lattice index {}", idx(&gap.facet_index), idx(&gap.grouped_index));
            if let Some(note) = &gap.note {
                let _ = writeln!(w, "  note: {note}");
            }
        }
    }
    if let Some(m) = &r.monodromy {
        render_monodromy(w, m);
    }
    let c = &r.config;
    let _ = writeln!(w, "config: seed {}, budget {}, newton tol {:e}, match tol {:e}", c.seed, c.budget, c.newton_tol, c.match_tol);
    for warning in &r.warnings {
        let _ = writeln!(w, "warning: {warning}");
    }
    out
}

fn render_monodromy(w: &mut String, m: &MonodromySection) {
    let _ = writeln!(w, "monodromy");
    let _ = writeln!(w, "  roots = {} (max scaled residual {:.1e})", m.roots, m.max_residual);
    let _ = writeln!(w, "  loops = {} ({} accepted, {} rejected)", m.loops_used, m.accepted, m.rejected);
    let _ = writeln!(w, "  group order = {}", m.group_order);
    for g in &m.generators {
        let _ = writeln!(w, "    generator {g}");
    }
    let blocks: Vec<String> = m
        .blocks
        .iter()
        .map(|b| format!("{{{}}}", b.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")))
        .collect();
    let _ = writeln!(w, "  blocks = {} of size {}: {}", m.block_count, m.block_size, blocks.join(" "));
    if let Some(wr) = &m.wreath {
        let index = wr.index.as_ref().map_or("n/a".to_string(), ToString::to_string);
        let _ = writeln!(
            w,
            "  wreath order {}, contained {}, index {}, block action order {}, generators even {}",
            wr.wreath_order,
            yes(wr.contained),
            index,
            wr.block_action_order,
            yes(wr.generators_even)
        );
    }
    let s = &m.solution_lattice;
    let _ = writeln!(
        w,
        "  solution lattice in Z^{}: invariants {}, full {}, inductively connected {}, decided {}",
        s.ambient_rank,
        list(&s.invariants),
        yes(s.full),
        yes(s.inductively_connected),
        yes(s.decided)
    );
    for p in &m.poisson {
        let _ = writeln!(
            w,
            "  divisibility b = {}: modulus {}, {} closed windings, {}",
            list(&p.b),
            p.modulus,
            p.loops_checked,
            if p.holds { "holds" } else { "VIOLATED" }
        );
    }
    if m.budget_exhausted {
        let _ = writeln!(w, "  budget exhausted");
    }
}

//! Graphviz dual graphs of chain surfaces.

use std::fmt::Write;

use bhj_core::{ChainSurface, CurveRam, Germ};

fn ram_order(ram: &CurveRam, p: i64) -> i64 {
    match ram {
        CurveRam::Etale(z) => z.order(),
        CurveRam::Secondary => p,
    }
}

fn germ_node(out: &mut String, id: &str, g: &Germ, p: i64) {
    let _ = writeln!(
        out,
        "  \"{id}\" [shape=box, label=\"{}\\ne={} g={}\\nord {}\"];",
        g.label,
        g.e,
        g.g,
        ram_order(&g.ram, p)
    );
}

/// Uncontracted curves are circles labelled with self-intersection and
/// ramification order; each contracted run becomes one double circle
/// labelled with its HJ weights. Branch germs are boxes.
pub fn render(chain: &ChainSurface) -> String {
    let mut out = String::from("graph dual {\n");
    let mut order: Vec<String> = Vec::new();
    if let Some(g) = &chain.left {
        germ_node(&mut out, "left", g, chain.p);
        order.push("left".into());
    }
    let runs = chain.components();
    let mut i = 0;
    let mut point = 0;
    while i < chain.curves.len() {
        if let Some(run) = runs.iter().find(|r| r.start == i) {
            point += 1;
            let weights: Vec<String> = run.clone().map(|j| chain.curves[j].weight().to_string()).collect();
            let id = format!("P{point}");
            let _ = writeln!(out, "  \"{id}\" [shape=doublecircle, label=\"[{}]\"];", weights.join(","));
            order.push(id);
            i = run.end;
        } else {
            let c = &chain.curves[i];
            let _ = writeln!(
                out,
                "  \"{}\" [shape=circle, label=\"{}\\n{}\\nord {}\"];",
                c.label,
                c.label,
                c.self_intersection,
                ram_order(&c.ram, chain.p)
            );
            order.push(c.label.clone());
            i += 1;
        }
    }
    if let Some(g) = &chain.right {
        germ_node(&mut out, "right", g, chain.p);
        order.push("right".into());
    }
    for pair in order.windows(2) {
        let _ = writeln!(out, "  \"{}\" -- \"{}\";", pair[0], pair[1]);
    }
    out.push_str("}\n");
    out
}

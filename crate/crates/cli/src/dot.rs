//! Graphviz export of the automaton's reachable component.

use std::fmt::Write;

use stern_core::automaton::Dfao;

/// Nodes in state-id order, labelled `(α,β)`; states with output 0 are drawn
/// as double circles and the initial state gets an entry arrow.
pub fn automaton_dot(dfao: &Dfao) -> String {
    let mut s = String::new();
    let states = dfao.reachable();
    writeln!(s, "digraph automaton {{").unwrap();
    writeln!(s, "  label=\"p = {}, t = {}, K = {}\";", dfao.modulus(), dfao.t().value(), states.len())
        .unwrap();
    writeln!(s, "  rankdir=LR;").unwrap();
    writeln!(s, "  node [shape=circle];").unwrap();
    writeln!(s, "  start [shape=point];").unwrap();
    writeln!(s, "  start -> s{};", dfao.initial()).unwrap();
    for &id in &states {
        let shape = if dfao.output(id) == 0 { ", shape=doublecircle" } else { "" };
        writeln!(s, "  s{id} [label=\"{}\"{shape}];", dfao.state(id)).unwrap();
    }
    for &id in &states {
        for bit in [false, true] {
            writeln!(s, "  s{id} -> s{} [label=\"{}\"];", dfao.step(id, bit), bit as u8).unwrap();
        }
    }
    writeln!(s, "}}").unwrap();
    s
}

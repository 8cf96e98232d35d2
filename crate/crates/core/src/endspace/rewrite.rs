//! Normalization as a rewrite system with an externally chosen redex order.
//!
//! [`super::normalize`] evaluates bottom-up; this module applies the same
//! rules one redex at a time, in whatever order the caller's chooser
//! dictates, so that confluence can be checked by comparing results.

use super::{interval_canonical, sorted_union, CanonicalEndSpace, EndSpace, NormalForm};
use crate::ordinal::Ordinal;

#[derive(Clone, Debug)]
enum Node {
    Leaf(EndSpace),
    Canon(CanonicalEndSpace),
    Union(Vec<Node>),
    Seq(Box<Node>),
}

#[derive(Clone, Debug)]
enum Rule {
    Leaf,
    Collapse,
    Flatten(usize),
    DropEmpty(usize),
    Merge(usize, usize),
    SeqCanon,
}

#[derive(Clone, Debug)]
struct Redex {
    path: Vec<usize>,
    rule: Rule,
}

fn lift(e: &EndSpace) -> Node {
    match e {
        EndSpace::Union(cs) => Node::Union(cs.iter().map(lift).collect()),
        EndSpace::Seq(c) => Node::Seq(Box::new(lift(c))),
        leaf => Node::Leaf(leaf.clone()),
    }
}

fn collect(node: &Node, path: &mut Vec<usize>, out: &mut Vec<Redex>) {
    let mut push = |rule| {
        out.push(Redex {
            path: path.clone(),
            rule,
        })
    };
    match node {
        Node::Leaf(_) => push(Rule::Leaf),
        Node::Canon(_) => {}
        Node::Seq(child) => {
            if let Node::Canon(c) = child.as_ref() {
                if c.seq_compactify().is_some() {
                    push(Rule::SeqCanon);
                }
            }
            path.push(0);
            collect(child, path, out);
            path.pop();
        }
        Node::Union(cs) => {
            if cs.len() <= 1 {
                push(Rule::Collapse);
            }
            for (i, c) in cs.iter().enumerate() {
                match c {
                    Node::Union(_) => push(Rule::Flatten(i)),
                    Node::Canon(k) if cs.len() >= 2 && *k == CanonicalEndSpace::empty() => {
                        push(Rule::DropEmpty(i))
                    }
                    _ => {}
                }
            }
            for i in 0..cs.len() {
                for j in i + 1..cs.len() {
                    if matches!(cs[i], Node::Canon(_)) && matches!(cs[j], Node::Canon(_)) {
                        push(Rule::Merge(i, j));
                    }
                }
            }
            for (i, c) in cs.iter().enumerate() {
                path.push(i);
                collect(c, path, out);
                path.pop();
            }
        }
    }
}

fn rewrite_leaf(e: &EndSpace) -> Node {
    match e {
        EndSpace::Empty => Node::Canon(CanonicalEndSpace::empty()),
        EndSpace::Pt => Node::Canon(CanonicalEndSpace::discrete(1)),
        EndSpace::Cantor => Node::Canon(CanonicalEndSpace::cantor()),
        EndSpace::Lim(l) => Node::Canon(CanonicalEndSpace::scattered_o(1, l.get().clone())),
        EndSpace::Interval(b) if b.is_finite() || b.is_single_term() => {
            Node::Canon(interval_canonical(b))
        }
        EndSpace::Interval(b) => {
            // [0, w^g*n + t] = [0, w^g*n] ⊔ (w^g*n, w^g*n + t]
            let head = Ordinal::omega_pow_mul(
                b.leading_exponent().unwrap().clone(),
                b.leading_coefficient().unwrap(),
            );
            let tail = b.tail();
            let rest = match tail.as_finite() {
                Some(1) => EndSpace::Pt,
                Some(r) => EndSpace::Interval(Ordinal::nat(r - 1)),
                None => EndSpace::Interval(tail),
            };
            Node::Union(vec![Node::Leaf(EndSpace::Interval(head)), Node::Leaf(rest)])
        }
        EndSpace::Union(_) | EndSpace::Seq(_) => unreachable!("not a leaf"),
    }
}

fn apply(node: &mut Node, path: &[usize], rule: &Rule) {
    if let Some((&first, rest)) = path.split_first() {
        match node {
            Node::Union(cs) => apply(&mut cs[first], rest, rule),
            Node::Seq(c) => apply(c, rest, rule),
            _ => unreachable!("redex path runs through a leaf"),
        }
        return;
    }
    let replaced = match (std::mem::replace(node, Node::Union(Vec::new())), rule) {
        (Node::Leaf(e), Rule::Leaf) => rewrite_leaf(&e),
        (Node::Union(mut cs), Rule::Collapse) => match cs.pop() {
            Some(c) => c,
            None => Node::Canon(CanonicalEndSpace::empty()),
        },
        (Node::Union(mut cs), Rule::Flatten(i)) => {
            let Node::Union(inner) = cs.remove(*i) else {
                unreachable!()
            };
            for (k, c) in inner.into_iter().enumerate() {
                cs.insert(*i + k, c);
            }
            Node::Union(cs)
        }
        (Node::Union(mut cs), Rule::DropEmpty(i)) => {
            cs.remove(*i);
            Node::Union(cs)
        }
        (Node::Union(mut cs), Rule::Merge(i, j)) => {
            let Node::Canon(b) = cs.remove(*j) else {
                unreachable!()
            };
            let Node::Canon(a) = std::mem::replace(&mut cs[*i], Node::Union(Vec::new())) else {
                unreachable!()
            };
            cs[*i] = Node::Canon(a.merge(b));
            Node::Union(cs)
        }
        (Node::Seq(c), Rule::SeqCanon) => {
            let Node::Canon(k) = *c else { unreachable!() };
            Node::Canon(k.seq_compactify().expect("checked when collected"))
        }
        (n, r) => unreachable!("rule {r:?} does not match {n:?}"),
    };
    *node = replaced;
}

fn reify(node: Node) -> EndSpace {
    match node {
        Node::Leaf(e) => e,
        Node::Canon(c) => c.embed(),
        Node::Seq(c) => EndSpace::Seq(Box::new(reify(*c))),
        Node::Union(cs) => sorted_union(cs.into_iter().map(reify)),
    }
}

/// Normalizes by rewriting one redex at a time. `choose(k)` picks which of
/// the `k` currently available redexes to fire and must return a value
/// below `k`.
pub fn normalize_with(e: &EndSpace, mut choose: impl FnMut(usize) -> usize) -> NormalForm {
    let mut node = lift(e);
    let mut redexes = Vec::new();
    loop {
        redexes.clear();
        collect(&node, &mut Vec::new(), &mut redexes);
        if redexes.is_empty() {
            break;
        }
        let pick = choose(redexes.len());
        let Redex { path, rule } = &redexes[pick.min(redexes.len() - 1)];
        apply(&mut node, path, rule);
    }
    match node {
        Node::Canon(c) => NormalForm::Canonical(c),
        other => NormalForm::Irreducible(reify(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endspace::normalize;

    #[test]
    fn first_and_last_strategies_agree() {
        let e = EndSpace::union([
            EndSpace::seq(EndSpace::union([EndSpace::Pt, EndSpace::Cantor])).unwrap(),
            EndSpace::Interval(Ordinal::omega().add(&Ordinal::nat(2))),
            EndSpace::union([EndSpace::Pt, EndSpace::interval(3)]),
        ]);
        let first = normalize_with(&e, |_| 0);
        let last = normalize_with(&e, |k| k - 1);
        assert_eq!(first, last);
        assert_eq!(first, normalize(&e));
    }
}

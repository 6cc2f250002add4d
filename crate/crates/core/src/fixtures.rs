//! Small hand-checked instances used by tests, examples and `cover bench`.

use crate::graph::Instance;

/// `a -> s`, `f(s) = 1`.
pub fn f1() -> Instance {
    Instance::new(2, &[(0, 1)], &[(1, 1)]).unwrap()
}

/// Path `a -> b -> s` with `f(s) = 2`; needs one copy of each arc.
pub fn f2() -> Instance {
    Instance::new(3, &[(0, 1), (1, 2)], &[(2, 2)]).unwrap()
}

/// Two parallel arcs into a root of demand one: not proper.
pub fn f3() -> Instance {
    Instance::new(2, &[(0, 1), (0, 1)], &[(1, 1)]).unwrap()
}

/// `v = 0`, `a = 1`, `s1 = 2`, `s2 = 3`; arcs `v->a` twice, `v->s2`, `a->s1`;
/// `f(s1) = 1`, `f(s2) = 2`. Proper but not coverable.
pub fn f4() -> Instance {
    Instance::new(4, &[(0, 1), (0, 1), (0, 3), (1, 2)], &[(2, 1), (3, 2)]).unwrap()
}

/// `v` with one arc to each of two roots of demand one.
pub fn f5() -> Instance {
    Instance::new(3, &[(0, 1), (0, 2)], &[(1, 1), (2, 1)]).unwrap()
}

/// `u <-> v`, both pointing at `s` with `f(s) = 2`.
pub fn f6() -> Instance {
    Instance::new(3, &[(0, 1), (1, 0), (0, 2), (1, 2)], &[(2, 2)]).unwrap()
}

pub fn all() -> Vec<(&'static str, Instance)> {
    vec![("F1", f1()), ("F2", f2()), ("F3", f3()), ("F4", f4()), ("F5", f5()), ("F6", f6())]
}

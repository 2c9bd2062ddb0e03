use proptest::prelude::*;

use udcrystal::expr::{parse_expr, point, print_expr, PosRatExpr};
use udcrystal::Rational;

const NAMES: [&str; 3] = ["x", "y", "z"];

/// Expression trees evaluated directly, as an oracle independent of the
/// canonical form.
#[derive(Debug, Clone)]
enum Tree {
    Var(usize),
    Const(i64, i64),
    Add(Box<Tree>, Box<Tree>),
    Mul(Box<Tree>, Box<Tree>),
    Div(Box<Tree>, Box<Tree>),
    Pow(Box<Tree>, u32),
}

impl Tree {
    fn build(&self) -> PosRatExpr {
        match self {
            Tree::Var(k) => PosRatExpr::var(NAMES[*k]),
            Tree::Const(p, q) => PosRatExpr::constant(Rational::new(*p, *q)).unwrap(),
            Tree::Add(a, b) => a.build().add(&b.build()),
            Tree::Mul(a, b) => a.build().mul(&b.build()),
            Tree::Div(a, b) => a.build().div(&b.build()),
            Tree::Pow(a, k) => a.build().pow(*k as i32),
        }
    }

    fn eval(&self, v: &[Rational; 3]) -> Rational {
        match self {
            Tree::Var(k) => v[*k].clone(),
            Tree::Const(p, q) => Rational::new(*p, *q),
            Tree::Add(a, b) => a.eval(v) + b.eval(v),
            Tree::Mul(a, b) => a.eval(v) * b.eval(v),
            Tree::Div(a, b) => a.eval(v) / b.eval(v),
            Tree::Pow(a, k) => a.eval(v).pow(*k as i32),
        }
    }

    fn text(&self) -> String {
        match self {
            Tree::Var(k) => NAMES[*k].to_string(),
            Tree::Const(p, q) => format!("({p}/{q})"),
            Tree::Add(a, b) => format!("({} + {})", a.text(), b.text()),
            Tree::Mul(a, b) => format!("({} * {})", a.text(), b.text()),
            Tree::Div(a, b) => format!("({} / {})", a.text(), b.text()),
            Tree::Pow(a, k) => format!("({})^{k}", a.text()),
        }
    }
}

fn tree() -> impl Strategy<Value = Tree> {
    let leaf = prop_oneof![(0usize..3).prop_map(Tree::Var), (1i64..6, 1i64..6).prop_map(|(p, q)| Tree::Const(p, q))];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Div(Box::new(a), Box::new(b))),
            (inner, 0u32..3).prop_map(|(a, k)| Tree::Pow(Box::new(a), k)),
        ]
    })
}

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..=97, 1i64..=97).prop_map(|(p, q)| Rational::new(p, q))
}

fn values() -> impl Strategy<Value = [Rational; 3]> {
    (positive(), positive(), positive()).prop_map(|(a, b, c)| [a, b, c])
}

fn at(v: &[Rational; 3]) -> udcrystal::expr::Point {
    point(NAMES.iter().copied().zip(v.iter().cloned()))
}

fn positive_coefficients(e: &PosRatExpr) -> bool {
    e.numerator().as_laurent().all_positive() && e.denominator().as_laurent().all_positive()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn evaluation_is_a_homomorphism(t in tree(), v in values()) {
        let e = t.build();
        prop_assert!(positive_coefficients(&e));
        prop_assert_eq!(e.evaluate(&at(&v)).unwrap(), t.eval(&v));
    }

    #[test]
    fn binary_operations_commute_with_evaluation(a in tree(), b in tree(), v in values()) {
        let (ea, eb) = (a.build(), b.build());
        let p = at(&v);
        let (x, y) = (ea.evaluate(&p).unwrap(), eb.evaluate(&p).unwrap());
        prop_assert_eq!(ea.add(&eb).evaluate(&p).unwrap(), &x + &y);
        prop_assert_eq!(ea.mul(&eb).evaluate(&p).unwrap(), &x * &y);
        prop_assert_eq!(ea.div(&eb).evaluate(&p).unwrap(), &x / &y);
        prop_assert!(positive_coefficients(&ea.div(&eb)));
    }

    #[test]
    fn print_parse_roundtrip(t in tree()) {
        let e = t.build();
        let back = parse_expr(&print_expr(&e), &NAMES).unwrap();
        prop_assert!(back.equals(&e));
        // Printing is deterministic on the canonical form.
        prop_assert_eq!(print_expr(&back), print_expr(&e));
    }

    #[test]
    fn parsing_tree_text_matches_construction(t in tree()) {
        prop_assert!(parse_expr(&t.text(), &NAMES).unwrap().equals(&t.build()));
    }

    #[test]
    fn equality_is_an_equivalence(a in tree(), b in tree()) {
        let (ea, eb) = (a.build(), b.build());
        prop_assert!(ea.equals(&ea));
        prop_assert_eq!(ea.equals(&eb), eb.equals(&ea));
        // A different presentation of the same function.
        let ea2 = ea.mul(&eb).div(&eb);
        prop_assert!(ea.equals(&ea2) && ea2.equals(&ea));
        if ea.equals(&eb) {
            prop_assert!(eb.equals(&ea2));
        }
    }

    #[test]
    fn equal_expressions_evaluate_equally(a in tree(), b in tree(), v in values()) {
        let (ea, eb) = (a.build(), b.build());
        let lhs = ea.add(&eb).mul(&ea);
        let rhs = ea.mul(&ea).add(&ea.mul(&eb));
        prop_assert!(lhs.equals(&rhs));
        let p = at(&v);
        prop_assert_eq!(lhs.evaluate(&p).unwrap(), rhs.evaluate(&p).unwrap());
    }

    #[test]
    fn substitution_commutes_with_evaluation(t in tree(), s in tree(), v in values()) {
        let e = t.build();
        let sub = s.build();
        let bindings = [("x".to_string(), sub.clone())].into_iter().collect();
        let p = at(&v);
        let mut shifted = v.clone();
        shifted[0] = sub.evaluate(&p).unwrap();
        prop_assert_eq!(e.substitute(&bindings).evaluate(&p).unwrap(), t.eval(&shifted));
    }
}

/// Agreement on a grid of `(deg + 1)^n` distinct positive points implies
/// equality of polynomials of that degree.
#[test]
fn grid_agreement_implies_equality() {
    let a = parse_expr("(x + y)^2", &NAMES).unwrap();
    let b = parse_expr("x^2 + 2*x*y + y^2", &NAMES).unwrap();
    let c = parse_expr("x^2 + x*y + y^2", &NAMES).unwrap();
    let grid: Vec<_> = (1..=3)
        .flat_map(|i| (1..=3).map(move |j| [Rational::from_int(i), Rational::from_int(j), Rational::one()]))
        .collect();
    assert!(grid.iter().all(|v| a.evaluate(&at(v)).unwrap() == b.evaluate(&at(v)).unwrap()));
    assert!(a.equals(&b));
    assert!(grid.iter().any(|v| a.evaluate(&at(v)).unwrap() != c.evaluate(&at(v)).unwrap()));
    assert!(!a.equals(&c));
}

#[test]
fn subtraction_and_zero_are_rejected() {
    assert!(parse_expr("x - y", &NAMES).is_err());
    assert!(parse_expr("0", &NAMES).is_err());
    assert!(parse_expr("w", &NAMES).is_err());
    assert!(PosRatExpr::constant(Rational::zero()).is_err());
    assert!(PosRatExpr::constant(Rational::new(-1, 2)).is_err());
}

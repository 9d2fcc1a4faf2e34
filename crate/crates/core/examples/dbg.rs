use divcell_core::inhomogeneous::{chain, Cell};
use divcell_core::oracle::{OrderKind, OrderRelation, Window};
use divcell_core::{sampling, Surd};
use num_bigint::BigInt;

fn main() {
    let mut rng = sampling::rng(1007);
    let mut problem: Option<Cell> = None;
    for i in 0..10 {
        let d = [2u64, 3, 5][i % 3];
        let p = sampling::random_problem(&mut rng, d);
        if i == 6 {
            problem = Some(p);
        }
    }
    let problem = problem.unwrap();
    println!("problem {problem:?}");
    let view = problem.viewing(&BigInt::from(5), &BigInt::from(3));
    println!("(5,3): xi={} eta={} F={}", view.0.decimal(8), view.1.decimal(8),
             (&view.0 * &view.1).decimal(8));
    // chain vertices near (5,3)
    let record = chain(&problem, 40, 40).unwrap();
    println!("chain steps: {}", record.steps.len());
    for st in &record.steps {
        for v in st.vertex_infos() {
            if let (Ok(x), Ok(y)) = (i64::try_from(&v.lattice.0), i64::try_from(&v.lattice.1)) {
                if x.abs() <= 8 && y.abs() <= 8 {
                    println!("  step {:>3} {:?} vertex ({x},{y}) F={}", st.index, v.quadrant,
                        (&v.viewing.0 * &v.viewing.1).decimal(6));
                }
            }
        }
    }
    // who dominates (5,3) in a larger window?
    let wbig = Window::new(25, 1).unwrap();
    let rel = OrderRelation::build(&problem, &wbig, OrderKind::Extended);
    let mut shown = 0;
    for p in rel.points() {
        if *p != (5, 3) && rel.leq(*p, (5, 3)) && shown < 8 {
            println!("  dominated by {p:?}");
            shown += 1;
        }
    }
    if shown == 0 {
        println!("  (5,3) minimal even at window 25");
    }
}

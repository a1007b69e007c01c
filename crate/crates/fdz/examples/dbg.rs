use fdz::samples;
use fdz::zlattice::*;
use num_bigint::BigInt;

fn main() {
    let r = samples::nonregular_rank3();
    let fam = IntMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    let rel = r.group().relations();
    let stacked = fam.stack(rel);
    eprintln!("stacked = {:?}", stacked);
    for a in 0..3usize {
        for b in 0..3usize {
            eprintln!("pair {a},{b}");
            let prod = r.multiply_raw(fam.row(a), fam.row(b));
            eprintln!("  prod = {:?}", prod.iter().map(|x| x.to_string()).collect::<Vec<_>>());
            let y = express_in_rows(&stacked, &prod);
            eprintln!("  y = {:?}", y.map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
        }
    }
    eprintln!("tor: target 2*(0,0,1)");
    let target = vec![BigInt::from(0), BigInt::from(0), BigInt::from(2)];
    let st2 = IntMatrix::zero(0, 3).stack(rel);
    let y = express_in_rows(&st2, &target);
    eprintln!("y = {:?}", y.is_some());
}

use compat_lie::aut::AutOptions;
use compat_lie::classify::{orbits, t_s_elements, ClassifyOptions, OracleMode};
use compat_lie::cohomology::cohomology;
use compat_lie::field::Field;
use compat_lie::iso::fingerprint;
use compat_lie::table::reference_table;
use std::time::Instant;

#[test]
fn profile_f7_stages() {
    let f7 = Field::prime(7).unwrap();
    let t = Instant::now();
    let table = reference_table(f7).unwrap();
    println!("reference_table(F_7): {} entries in {:.2?}", table.len(), t.elapsed());

    let t = Instant::now();
    let fps: Vec<_> = table.iter().map(|e| fingerprint(&e.algebra)).collect();
    println!("fingerprints for {} entries: {:.2?}", fps.len(), t.elapsed());

    // the abelian(3) orbit job
    let ab3 = compat_lie::algebra::CompatibleLieAlgebra::abelian(f7, 3);
    let t = Instant::now();
    let data = cohomology(&ab3).unwrap();
    let ts = t_s_elements(&ab3, &data, 1).unwrap();
    println!("T_1(abelian3, F_7): {} elements in {:.2?}", ts.len(), t.elapsed());
    let t = Instant::now();
    let reps = orbits(&ab3, &data, 1, &AutOptions::default()).unwrap();
    println!("orbits: {} in {:.2?}", reps.len(), t.elapsed());

    // one structured base
    let n32 = compat_lie::algebra::CompatibleLieAlgebra::from_relations_i64(
        f7, 3, &[(compat_lie::algebra::Bracket::One, 0, 1, 2, 1)]);
    let t = Instant::now();
    let data = cohomology(&n32).unwrap();
    let reps = orbits(&n32, &data, 1, &AutOptions::default()).unwrap();
    println!("orbits over the n32-type base: {} in {:.2?}", reps.len(), t.elapsed());

    let t = Instant::now();
    let mut opts = ClassifyOptions::default();
    opts.pairwise_check = false;
    let c = compat_lie::classify::classify(4, f7, &opts).unwrap();
    println!("classify(4, F_7) no pairwise: {} entries in {:.2?}", c.entries.len(), t.elapsed());

    let t = Instant::now();
    let mut opts = ClassifyOptions::default();
    opts.oracle = Some(OracleMode::Sampled { seed: 1, max_pairs: 50 });
    let c = compat_lie::classify::classify(4, f7, &opts).unwrap();
    println!("classify(4, F_7) sampled-50: {} entries in {:.2?}", c.entries.len(), t.elapsed());
}

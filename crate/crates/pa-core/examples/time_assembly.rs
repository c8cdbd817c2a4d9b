use pa_core::construct::*;
use pa_core::rat::rat_int;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let (pa, log) = assemble_pa(3, &rat_int(1), true).unwrap();
    println!("assemble_pa(3,1): {:?}", t0.elapsed());
    println!("vertices: {}", pa.poly.vertices().len());
    println!("facets:   {}", pa.poly.facets().len());
    println!("steps:    {}", log.steps.len());
    println!("simple:   {}", pa.poly.is_simple());
    let t1 = Instant::now();
    let f = pa.poly.f_vector();
    println!("f_vector: {:?} in {:?}", f.0, t1.elapsed());
    let t2 = Instant::now();
    let r = reference_pa(3).unwrap();
    println!("reference_pa(3): {:?}, vertices {}", t2.elapsed(), r.poly.vertices().len());
    let t3 = Instant::now();
    let eq = pa.poly.normally_equivalent(&r.poly).unwrap();
    println!("normally_equivalent: {} in {:?}", eq, t3.elapsed());
}

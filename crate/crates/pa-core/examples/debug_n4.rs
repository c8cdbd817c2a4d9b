use pa_core::construct::*;
use pa_core::nested::Beta;

fn main() {
    let b4 = Beta::from_lists(&[vec![1, 2, 3], vec![1, 2]], 4).unwrap();
    let bb = pa_core::nested::b_beta(&b4, 4).unwrap();
    println!("B_beta blocks: {:?}", bb.blocks.iter().map(|b| b.0.iter().collect::<Vec<_>>()).collect::<Vec<_>>());
    let nest = nestohedron_of_beta(&b4, 4).unwrap();
    println!("vertex count: {}", nest.vertices().len());
    for v in nest.vertices() {
        println!("{:?}", v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(","));
    }
}

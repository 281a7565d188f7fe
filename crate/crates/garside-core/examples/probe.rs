// probe: property suite timing on the big instance
use garside_core::verify::*;
use garside_core::*;

fn main() {
    let g = instances::g31().unwrap();
    let t0 = std::time::Instant::now();
    let report = property_suite(&g, 12345, 50);
    println!("{}", report.render());
    println!("50 samples took {:?}", t0.elapsed());
}

//! Validation origin schedules for the eight estimation approaches.
//!
//! `cargo run --example groe_schedules -- 64 8`

use optheta::{approach_config, origin_schedule, p_max, Approach, Horizon};

fn main() -> optheta::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>());
    let n = args.next().transpose().ok().flatten().unwrap_or(64);
    let h = args.next().transpose().ok().flatten().unwrap_or(8);

    println!(
        "n = {n}, h = {h}, p_max(n, n - h, 1) = {}",
        p_max(n, n - h, 1)?
    );
    println!("approach  p   m   H   n1  origins");
    for a in Approach::ALL {
        let c = approach_config(a, n, Horizon::new(h)?)?;
        let origins = origin_schedule(&c, n)?;
        println!(
            "{a:<8} {:>2} {:>3} {:>3} {:>4}  {origins:?}",
            c.p, c.m, c.horizon, c.n1
        );
    }
    Ok(())
}

use wqed::wavepackets::*;
use wqed::scattering::*;
fn main() {
    let e = EmitterParams::new(0.0, 1.0, 0.0).unwrap();
    let pulse = GaussianPulse::new(0.0, 0.36).unwrap();
    let grid = default_grid(&e, &pulse);
    println!("grid n={} hw={} h={}", grid.n_points(), grid.half_width(), grid.spacing());
    let f = OnePhotonAmplitude::gaussian(&pulse, &grid).unwrap();
    let g = TwoPhotonAmplitude::product(&f);
    println!("g norm {}", g.norm_sq());
    let fb = bound_term_apply(&e, &g).unwrap();
    println!("fb norm_sq {}", fb.norm_sq());
    let out = scatter_two(&e, &g).unwrap();
    println!("out norm_sq {}", out.norm_sq());
    let tt = g.map_with_kp(|k, p, v| transmission_amplitude(&e, k) * transmission_amplitude(&e, p) * v);
    let cross = tt.inner(&fb).unwrap().re;
    println!("cross {}  -0.5 fbnorm {}", cross, -0.5*fb.norm_sq());
    println!("p_s = {}", 0.25 * fb.norm_sq());
}

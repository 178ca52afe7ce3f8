use glint_core::gtbasis::{HighestWeight, Rep};
use glint_core::hambuilder::hamiltonian_density;
use glint_core::linalg::{self, kron, CMat, C64};
use glint_core::qfactory::{q_operator, TwistConfig};
use glint_core::weights::IndexSet;

fn main() {
    let rep = Rep::new(HighestWeight::new(vec![1, 0]).unwrap());
    let len = 3usize;
    let d = rep.dim;
    let tw = TwistConfig::new(vec![C64::new(0.31, 0.08), C64::new(1.17, -0.05)]);
    let h2 = hamiltonian_density(&rep).unwrap();
    let full = d.pow(len as u32);

    // site twist with exponent sign s
    let site_g = |s: f64| -> CMat {
        let mut g = CMat::zeros((d, d));
        for (i, p) in rep.patterns.iter().enumerate() {
            let w = p.weight();
            let mut phase = C64::new(0.0, 0.0);
            for a in 0..rep.n() {
                phase += tw.phi()[a] * w[a] as f64;
            }
            g[(i, i)] = (C64::i() * phase * s).exp();
        }
        g
    };

    let q1 = q_operator(C64::new(0.63, 0.21), &IndexSet::new(2, vec![1]).unwrap(), &rep, len, &tw).unwrap();
    let q12 = q_operator(C64::new(-0.4, 0.53), &IndexSet::new(2, vec![1, 2]).unwrap(), &rep, len, &tw).unwrap();

    for sign in [1.0f64, -1.0] {
        for place in 0..4 {
            let g = site_g(sign);
            let ginv = site_g(-sign);
            let mut h = CMat::zeros((full, full));
            for i in 0..len - 1 {
                h += &linalg::embed_two_site(&h2, i, i + 1, len, d);
            }
            let boundary = match place {
                0 => {
                    // twist on the first tensor factor of bond (L-1, 0)
                    let gg = kron(&g, &linalg::eye(d));
                    let ggi = kron(&ginv, &linalg::eye(d));
                    linalg::embed_two_site(&gg.dot(&h2).dot(&ggi), len - 1, 0, len, d)
                }
                1 => {
                    let gg = kron(&linalg::eye(d), &g);
                    let ggi = kron(&linalg::eye(d), &ginv);
                    linalg::embed_two_site(&gg.dot(&h2).dot(&ggi), len - 1, 0, len, d)
                }
                2 => {
                    let gg = kron(&g, &linalg::eye(d));
                    let ggi = kron(&ginv, &linalg::eye(d));
                    linalg::embed_two_site(&gg.dot(&h2).dot(&ggi), 0, len - 1, len, d)
                }
                _ => {
                    let gg = kron(&linalg::eye(d), &g);
                    let ggi = kron(&linalg::eye(d), &ginv);
                    linalg::embed_two_site(&gg.dot(&h2).dot(&ggi), 0, len - 1, len, d)
                }
            };
            h += &boundary;
            let r1 = linalg::rel_comm_norm(&h, &q1);
            let r12 = linalg::rel_comm_norm(&h, &q12);
            println!("sign {sign:+} place {place}: [H,Q1] = {r1:.3e}  [H,Q12] = {r12:.3e}");
        }
    }
}

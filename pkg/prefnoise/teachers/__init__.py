from prefnoise.teachers.oracle import oracle_prob, oracle_label, noisy_label, label_pairs, return_gap

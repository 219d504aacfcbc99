from prefnoise.denoise.discriminator import label_kl, partition, denoised_batch, scheduled_threshold

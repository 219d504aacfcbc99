from prefnoise.latent.encoder import Encoder, train_encoder, encode, embedding_distance, trajectory_matrix

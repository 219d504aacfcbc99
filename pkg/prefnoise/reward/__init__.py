from prefnoise.reward.reward_net import (RewardNet, bt_prob, ce_loss, predicted_return,
                                        preference_probs, label_accuracy)
from prefnoise.reward.ensemble import RewardEnsemble, TrainReport, train_update, ensemble_uncertainty

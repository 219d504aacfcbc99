from prefnoise.remote.client import (RemoteTeacher, VerdictCache, query_preference, async_query_preference,
                                     measure_noise, parse_answer)
from prefnoise.remote.render import render_pair, render_trajectory
from prefnoise.remote.prompts import image_summary_prompt, preference_elicitation_prompt

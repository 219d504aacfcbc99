"""
Two-stage preference prompts: first ask for a summary of both images, then
ask which image better achieves the goal, given that summary.
"""
from prefnoise.exceptions import ConfigurationError

TASK_DESCRIPTIONS = {
    'gridworld': 'The goal is to move the grey agent square to the white goal square in the bottom-right corner',
    'pointmass': 'The goal is to move the white dot to the grey marker at the centre of the image',
}

IMAGE_SUMMARY_PROMPT = """1. What is shown in Image 1?

2. What is shown in Image 2?

3. {task}. Are there any differences between Image 1 and Image 2 in terms of achieving the goal?"""

PREFERENCE_ELICITATION_PROMPT = """Based on the text below to the questions:

1. What is shown in Image 1?

2. What is shown in Image 2?

3. {task}. Are there any differences between Image 1 and Image 2 in terms of achieving the goal?

{summary}

Is the goal better achieved in Image 1 or Image 2?
Reply with a single line of 0 if Image 1 achieves the goal better, or 1 if Image 2 achieves the goal better.
Reply -1 if unsure or there is no difference."""


def task_description(kind: str) -> str:
    try:
        return TASK_DESCRIPTIONS[kind]
    except KeyError:
        raise ConfigurationError(f'no task description for environment kind {kind!r}') from None


def image_summary_prompt(kind: str) -> str:
    return IMAGE_SUMMARY_PROMPT.format(task=task_description(kind))


def preference_elicitation_prompt(kind: str, summary: str) -> str:
    return PREFERENCE_ELICITATION_PROMPT.format(task=task_description(kind), summary=summary.strip())

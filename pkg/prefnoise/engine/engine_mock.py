import threading
from typing import Callable, Iterable, List, Optional, Union

from prefnoise.engine.base_transport import BaseTransport
from prefnoise.model import ModelChat, ModelChatResponse

ELICITATION_MARKER = 'Based on the text below'


class EngineMock(BaseTransport):
    """
    Offline transport with scripted replies.

    Summary requests get ``summary``; each elicitation request consumes the
    next scripted answer, or calls ``answers(chat)`` when a callable is given.
    The first ``failures`` calls raise, to exercise the retry path.
    """

    def __init__(self,
                 answers: Union[Iterable[str], Callable[[ModelChat], str]] = ('0',),
                 summary: str = 'Both images show the agent; they differ in its position.',
                 failures: int = 0,
                 model: str = 'mock',
                 retries: int = 3,
                 retry_delay: float = 0.0,
                 **kwargs):
        super().__init__(model=model, retries=retries, retry_delay=retry_delay, **kwargs)
        self.answers = answers if callable(answers) else list(answers)
        self.summary = summary
        self.failures = failures
        self.calls = 0
        self.requests: List[ModelChat] = []
        self._next_answer = 0
        self._lock = threading.Lock()

    @staticmethod
    def is_elicitation(chat: ModelChat) -> bool:
        return any(text.startswith(ELICITATION_MARKER) for text in chat.text_parts())

    def _reply(self, chat: ModelChat) -> ModelChatResponse:
        with self._lock:
            self.calls += 1
            self.requests.append(chat)
            if self.calls <= self.failures:
                raise ConnectionError(f'scripted failure {self.calls}/{self.failures}')
            if not self.is_elicitation(chat):
                return ModelChatResponse(content=self.summary)
            if callable(self.answers):
                return ModelChatResponse(content=self.answers(chat))
            answer: Optional[str] = self.answers[self._next_answer % len(self.answers)]
            self._next_answer += 1
            return ModelChatResponse(content=answer)

    @BaseTransport.sync_intercept_generate
    def generate(self, chat: ModelChat, **kwargs) -> ModelChatResponse:
        return self._reply(chat)

    @BaseTransport.async_intercept_generate
    async def async_generate(self, chat: ModelChat, **kwargs) -> ModelChatResponse:
        return self._reply(chat)

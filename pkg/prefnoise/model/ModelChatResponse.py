from typing import Optional

from pydantic import BaseModel


class UsageModel(BaseModel):
    prompt_tokens: Optional[int] = 0
    completion_tokens: Optional[int] = 0
    total_tokens: Optional[int] = 0
    ttf: Optional[float] = 0


class ModelChatResponse(BaseModel):
    content: str
    usage: UsageModel = UsageModel()
    role: str = 'assistant'

    @classmethod
    def from_completion(cls, r: dict) -> 'ModelChatResponse':
        """Parse an OpenAI-compatible ``/chat/completions`` body."""
        message = r['choices'][0]['message']
        usage = r.get('usage') or {}
        return cls(
            content=message.get('content') or '',
            role=message.get('role') or 'assistant',
            usage=UsageModel(
                prompt_tokens=usage.get('prompt_tokens', 0),
                completion_tokens=usage.get('completion_tokens', 0),
                total_tokens=usage.get('total_tokens', 0),
            )
        )

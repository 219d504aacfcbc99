import base64
from typing import List, Optional

PGM_MIME = 'image/x-portable-graymap'


class ModelChat:
    def __init__(self, system: Optional[str] = None) -> None:
        self.messages = [{"role": "system", "content": system}] if system else []

    def add_message(self, role: str, content):
        self.messages.append({
            "role": role,
            "content": content
        })

    def add_user_message(self, content: str):
        self.add_message("user", content)

    def add_user_images(self, text: str, images: List[bytes], mime: str = PGM_MIME):
        """User turn with a text part followed by base64 image parts, in the OpenAI content-part schema."""
        parts = [{"type": "text", "text": text}]
        for image in images:
            encoded = base64.b64encode(image).decode('ascii')
            parts.append({
                "type": "image_url",
                "image_url": {"url": f"data:{mime};base64,{encoded}"}
            })
        self.add_message("user", parts)

    def get_messages(self):
        return self.messages

    def text_parts(self) -> List[str]:
        out = []
        for message in self.messages:
            content = message['content']
            if isinstance(content, str):
                out.append(content)
            else:
                out.extend(part['text'] for part in content if part.get('type') == 'text')
        return out


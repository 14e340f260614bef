"""A deliberately small word-level transformer encoder-decoder.

Both presets train from random initialization in seconds on CPU.  Dropout
is zero and all attention masks are boolean, so a fixed seed gives the
same weights and the same greedy decode on every run.
"""

from dataclasses import dataclass

import torch
import torch.nn as nn

from eamt_trainer.data import PAD


@dataclass(frozen=True)
class ModelPreset:
    d_model: int
    n_heads: int
    n_layers: int
    ffn_width: int
    max_len: int = 512


MODEL_PRESETS = {
    "tiny": ModelPreset(d_model=64, n_heads=2, n_layers=2, ffn_width=128),
    "small": ModelPreset(d_model=128, n_heads=4, n_layers=2, ffn_width=256),
}


class Seq2SeqModel(nn.Module):
    def __init__(self, vocab_size: int, preset: ModelPreset):
        super().__init__()
        self.preset = preset
        self.token_embedding = nn.Embedding(vocab_size, preset.d_model, padding_idx=PAD)
        self.position_embedding = nn.Embedding(preset.max_len, preset.d_model)
        encoder_layer = nn.TransformerEncoderLayer(
            preset.d_model, preset.n_heads, preset.ffn_width,
            dropout=0.0, batch_first=True, norm_first=True,
        )
        decoder_layer = nn.TransformerDecoderLayer(
            preset.d_model, preset.n_heads, preset.ffn_width,
            dropout=0.0, batch_first=True, norm_first=True,
        )
        # Pre-norm stacks need a final LayerNorm to keep logits well scaled.
        self.encoder = nn.TransformerEncoder(
            encoder_layer, preset.n_layers,
            norm=nn.LayerNorm(preset.d_model), enable_nested_tensor=False,
        )
        self.decoder = nn.TransformerDecoder(
            decoder_layer, preset.n_layers, norm=nn.LayerNorm(preset.d_model)
        )
        self.project = nn.Linear(preset.d_model, vocab_size)

    def embed(self, ids: torch.Tensor) -> torch.Tensor:
        positions = torch.arange(ids.size(1), device=ids.device).unsqueeze(0)
        return self.token_embedding(ids) + self.position_embedding(positions)

    def forward(self, source: torch.Tensor, target_in: torch.Tensor) -> torch.Tensor:
        """Teacher-forced logits: (batch, tgt_len, vocab)."""
        causal = torch.triu(
            torch.ones(target_in.size(1), target_in.size(1), dtype=torch.bool),
            diagonal=1,
        )
        memory = self.encoder(self.embed(source), src_key_padding_mask=source.eq(PAD))
        hidden = self.decoder(
            self.embed(target_in),
            memory,
            tgt_mask=causal,
            tgt_key_padding_mask=target_in.eq(PAD),
            memory_key_padding_mask=source.eq(PAD),
        )
        return self.project(hidden)

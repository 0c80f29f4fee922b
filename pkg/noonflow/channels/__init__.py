from noonflow.channels.channel_models import ChannelEvaluator

__all__ = ['ChannelEvaluator']

from django.urls import path
from . import views

urlpatterns = [
    path('health/', views.health_check, name='health_check'),
    path('params/', views.params_view, name='params'),
    path('encode/', views.encode_view, name='encode'),
    path('decode/', views.decode_view, name='decode'),
    path('campaigns/', views.campaigns, name='campaigns'),
    path('campaigns/<int:pk>/', views.campaign_detail, name='campaign_detail'),
]

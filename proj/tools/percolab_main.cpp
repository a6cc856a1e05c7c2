// placeholder replaced later
int main(){return 0;}
